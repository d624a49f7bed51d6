#include "ndepth/exactmath.hpp"

#include "ndepth/error.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ndepth {

Scalar parse_scalar(std::string_view text)
{
	auto valid_int = [](std::string_view s) {
		if (!s.empty() && (s.front() == '-' || s.front() == '+'))
			s.remove_prefix(1);
		return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
	};
	auto slash = text.find('/');
	std::string_view num = text.substr(0, slash);
	std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
	if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
		throw InputError("not an exact rational: '" + std::string(text) + "'");
	std::string n(num.front() == '+' ? num.substr(1) : num);
	mpz_class nz(n, 10), dz(std::string(den), 10);
	if (dz == 0)
		throw InputError("zero denominator in '" + std::string(text) + "'");
	Scalar q(nz, dz);
	q.canonicalize();
	return q;
}

std::string to_string(const Scalar &x) { return x.get_str(); }

void add_entry(SparseVector &target, std::size_t index, const Scalar &value)
{
	if (value == 0)
		return;
	auto [it, inserted] = target.try_emplace(index, value);
	if (!inserted)
	{
		it->second += value;
		if (it->second == 0)
			target.erase(it);
	}
}

void add_scaled(SparseVector &target, const SparseVector &source, const Scalar &factor)
{
	if (factor == 0)
		return;
	for (const auto &[i, v] : source)
		add_entry(target, i, factor * v);
}

SparseVector scaled(const SparseVector &v, const Scalar &factor)
{
	SparseVector out;
	add_scaled(out, v, factor);
	return out;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
	SparseMatrix m(n, n);
	for (std::size_t i = 0; i < n; ++i)
		m.cols_[i].emplace(i, 1);
	return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<SparseVector> columns)
{
	SparseMatrix m(rows, 0);
	m.cols_ = std::move(columns);
	for (auto &c : m.cols_)
	{
		std::erase_if(c, [](const auto &kv) { return kv.second == 0; });
		if (!c.empty() && c.rbegin()->first >= rows)
			throw std::out_of_range("SparseMatrix::from_columns: row index out of range");
	}
	return m;
}

SparseMatrix SparseMatrix::from_rows(std::size_t cols, const std::vector<SparseVector> &rows)
{
	SparseMatrix m(rows.size(), cols);
	for (std::size_t r = 0; r < rows.size(); ++r)
		for (const auto &[c, v] : rows[r])
			m.set(r, c, v);
	return m;
}

std::size_t SparseMatrix::nonzeros() const
{
	std::size_t n = 0;
	for (const auto &c : cols_)
		n += c.size();
	return n;
}

bool SparseMatrix::is_zero() const
{
	return std::all_of(cols_.begin(), cols_.end(), [](const SparseVector &c) { return c.empty(); });
}

Scalar SparseMatrix::get(std::size_t r, std::size_t c) const
{
	const auto &col = cols_.at(c);
	auto it = col.find(r);
	return it == col.end() ? Scalar(0) : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar &value)
{
	if (r >= rows_)
		throw std::out_of_range("SparseMatrix::set: row out of range");
	auto &col = cols_.at(c);
	if (value == 0)
		col.erase(r);
	else
		col[r] = value;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar &value)
{
	if (r >= rows_)
		throw std::out_of_range("SparseMatrix::add: row out of range");
	add_entry(cols_.at(c), r, value);
}

void SparseMatrix::set_column(std::size_t c, SparseVector v)
{
	std::erase_if(v, [](const auto &kv) { return kv.second == 0; });
	if (!v.empty() && v.rbegin()->first >= rows_)
		throw std::out_of_range("SparseMatrix::set_column: row out of range");
	cols_.at(c) = std::move(v);
}

SparseVector SparseMatrix::apply(const SparseVector &v) const
{
	SparseVector out;
	for (const auto &[c, x] : v)
		add_scaled(out, cols_.at(c), x);
	return out;
}

SparseMatrix SparseMatrix::transpose() const
{
	SparseMatrix t(cols(), rows_);
	for (std::size_t c = 0; c < cols_.size(); ++c)
		for (const auto &[r, v] : cols_[c])
			t.cols_[r].emplace(c, v);
	return t;
}

std::vector<SparseVector> SparseMatrix::row_list() const
{
	std::vector<SparseVector> rows(rows_);
	for (std::size_t c = 0; c < cols_.size(); ++c)
		for (const auto &[r, v] : cols_[c])
			rows[r].emplace(c, v);
	return rows;
}

SparseMatrix SparseMatrix::block(const std::vector<std::size_t> &row_ids, const std::vector<std::size_t> &col_ids) const
{
	std::map<std::size_t, std::size_t> row_pos;
	for (std::size_t i = 0; i < row_ids.size(); ++i)
		row_pos.emplace(row_ids[i], i);
	SparseMatrix b(row_ids.size(), col_ids.size());
	for (std::size_t j = 0; j < col_ids.size(); ++j)
		for (const auto &[r, v] : cols_.at(col_ids[j]))
			if (auto it = row_pos.find(r); it != row_pos.end())
				b.cols_[j].emplace(it->second, v);
	return b;
}

SparseMatrix SparseMatrix::power(unsigned p) const
{
	if (rows_ != cols())
		throw std::invalid_argument("SparseMatrix::power: matrix is not square");
	SparseMatrix result = identity(rows_);
	for (unsigned i = 0; i < p; ++i)
		result = *this * result;
	return result;
}

SparseMatrix operator*(const SparseMatrix &a, const SparseMatrix &b)
{
	if (a.cols() != b.rows())
		throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
	SparseMatrix out(a.rows(), b.cols());
	for (std::size_t c = 0; c < b.cols(); ++c)
		out.cols_[c] = a.apply(b.cols_[c]);
	return out;
}

SparseMatrix operator+(const SparseMatrix &a, const SparseMatrix &b)
{
	if (a.rows() != b.rows() || a.cols() != b.cols())
		throw std::invalid_argument("SparseMatrix: dimension mismatch in sum");
	SparseMatrix out = a;
	for (std::size_t c = 0; c < b.cols(); ++c)
		add_scaled(out.cols_[c], b.cols_[c], 1);
	return out;
}

SparseMatrix operator-(const SparseMatrix &a, const SparseMatrix &b)
{
	if (a.rows() != b.rows() || a.cols() != b.cols())
		throw std::invalid_argument("SparseMatrix: dimension mismatch in difference");
	SparseMatrix out = a;
	for (std::size_t c = 0; c < b.cols(); ++c)
		add_scaled(out.cols_[c], b.cols_[c], -1);
	return out;
}

SparseMatrix operator*(const Scalar &s, const SparseMatrix &a)
{
	SparseMatrix out(a.rows(), a.cols());
	for (std::size_t c = 0; c < a.cols(); ++c)
		out.cols_[c] = scaled(a.cols_[c], s);
	return out;
}

bool operator==(const SparseMatrix &a, const SparseMatrix &b)
{
	return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

SparseMatrix hstack(const SparseMatrix &a, const SparseMatrix &b)
{
	if (a.rows() != b.rows())
		throw std::invalid_argument("hstack: row counts differ");
	std::vector<SparseVector> cols;
	cols.reserve(a.cols() + b.cols());
	for (std::size_t c = 0; c < a.cols(); ++c)
		cols.push_back(a.column(c));
	for (std::size_t c = 0; c < b.cols(); ++c)
		cols.push_back(b.column(c));
	return SparseMatrix::from_columns(a.rows(), std::move(cols));
}

RankKernel rank_kernel(const SparseMatrix &m)
{
	const std::size_t ncols = m.cols();
	std::vector<SparseVector> rows = m.row_list();
	std::vector<bool> used(rows.size(), false);
	std::map<std::size_t, std::size_t> pivot_row_of_col;

	for (std::size_t c = 0; c < ncols; ++c)
	{
		std::size_t best = rows.size();
		for (std::size_t r = 0; r < rows.size(); ++r)
		{
			if (used[r] || !rows[r].count(c))
				continue;
			if (best == rows.size() || rows[r].size() < rows[best].size())
				best = r;
		}
		if (best == rows.size())
			continue;
		used[best] = true;
		Scalar inv = 1 / rows[best].at(c);
		for (auto &[k, v] : rows[best])
			v *= inv;
		for (std::size_t r = 0; r < rows.size(); ++r)
		{
			if (r == best)
				continue;
			auto it = rows[r].find(c);
			if (it == rows[r].end())
				continue;
			Scalar factor = -it->second;
			add_scaled(rows[r], rows[best], factor);
		}
		pivot_row_of_col.emplace(c, best);
	}

	RankKernel out;
	out.rank = pivot_row_of_col.size();
	for (std::size_t free = 0; free < ncols; ++free)
	{
		if (pivot_row_of_col.count(free))
			continue;
		SparseVector v;
		v.emplace(free, 1);
		for (const auto &[pc, pr] : pivot_row_of_col)
		{
			auto it = rows[pr].find(free);
			if (it != rows[pr].end())
				v.emplace(pc, -it->second);
		}
		out.kernel.push_back(std::move(v));
	}
	return out;
}

std::size_t rank(const SparseMatrix &m) { return rank_kernel(m).rank; }

std::size_t subquotient_dim(const SparseMatrix &a, const SparseMatrix &b)
{
	if (!(a * b).is_zero())
		throw PreconditionError("subquotient_dim: image of B is not contained in ker A (A*B != 0)");
	return (a.cols() - rank(a)) - rank(b);
}

bool in_column_span(const SparseMatrix &m, const SparseVector &v)
{
	SparseMatrix single(m.rows(), 1);
	single.set_column(0, v);
	return rank(hstack(m, single)) == rank(m);
}

void EchelonBasis::reduce(SparseVector &v) const
{
	auto it = v.begin();
	while (it != v.end())
	{
		auto row = rows_.find(it->first);
		if (row == rows_.end())
		{
			++it;
			continue;
		}
		std::size_t lead = it->first;
		Scalar factor = -it->second;
		add_scaled(v, row->second, factor);
		it = v.upper_bound(lead);
	}
}

bool EchelonBasis::insert(SparseVector v)
{
	reduce(v);
	if (v.empty())
		return false;
	Scalar inv = 1 / v.begin()->second;
	std::size_t lead = v.begin()->first;
	rows_.emplace(lead, scaled(v, inv));
	return true;
}

bool EchelonBasis::contains(SparseVector v) const
{
	reduce(v);
	return v.empty();
}

std::vector<SparseVector> EchelonBasis::vectors() const
{
	std::vector<SparseVector> out;
	for (const auto &[lead, v] : rows_)
		out.push_back(v);
	return out;
}

} // namespace ndepth
