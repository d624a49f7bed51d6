#include "ndepth/tensorcoalg.hpp"

#include "ndepth/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace ndepth {

TruncatedCoalgebra::TruncatedCoalgebra(ShiftedSpace base, std::size_t max_length, CarrierMode mode)
    : base_(std::move(base)), letters_(base_.materialize()), mode_(mode)
{
	if (max_length < 1)
		throw std::invalid_argument("TruncatedCoalgebra: truncation length must be >= 1");
	max_length_ = mode == CarrierMode::two_truncated ? std::min<std::size_t>(max_length, 2) : max_length;
	offsets_.push_back(0);
	for (std::size_t n = 1; n <= max_length_; ++n)
		offsets_.push_back(offsets_.back() + int_pow(letters_.dim(), n));
}

std::size_t TruncatedCoalgebra::count(std::size_t length) const { return int_pow(letters_.dim(), length); }

std::size_t TruncatedCoalgebra::index(const Word &w) const
{
	if (w.empty() || w.size() > max_length_)
		throw std::out_of_range("TruncatedCoalgebra::index: word length outside the carrier");
	std::size_t idx = 0;
	for (auto letter : w)
		idx = idx * letters_.dim() + letter;
	return offsets_[w.size() - 1] + idx;
}

Word TruncatedCoalgebra::word(std::size_t index) const
{
	if (index >= dim())
		throw std::out_of_range("TruncatedCoalgebra::word: index out of range");
	std::size_t len = 1;
	while (offsets_[len] <= index)
		++len;
	std::size_t local = index - offsets_[len - 1];
	Word w(len);
	for (std::size_t j = len; j > 0; --j)
	{
		w[j - 1] = local % letters_.dim();
		local /= letters_.dim();
	}
	return w;
}

int TruncatedCoalgebra::degree(const Word &w) const
{
	int d = 0;
	for (auto letter : w)
		d += letters_.degree(letter);
	return d;
}

std::vector<std::size_t> TruncatedCoalgebra::indices_of_length(std::size_t length) const
{
	std::vector<std::size_t> ids(count(length));
	for (std::size_t i = 0; i < ids.size(); ++i)
		ids[i] = offsets_.at(length - 1) + i;
	return ids;
}

namespace {

SparseVector lift_word(const std::map<std::size_t, GradedMultiMap> &family, const TruncatedCoalgebra &carrier,
                       const Word &w)
{
	SparseVector out;
	const GradedSpace &letters = carrier.letters();
	for (const auto &[k, f] : family)
	{
		if (k > w.size() || f.is_zero())
			continue;
		int prefix_degree = 0;
		for (std::size_t i = 0; i + k <= w.size(); ++i)
		{
			if (i > 0)
				prefix_degree += letters.degree(w[i - 1]);
			Tuple window(w.begin() + i, w.begin() + i + k);
			SparseVector image = f.apply(window);
			if (image.empty())
				continue;
			int sign = koszul_sign(prefix_degree, f.degree());
			Word target;
			target.reserve(w.size() - k + 1);
			target.insert(target.end(), w.begin(), w.begin() + i);
			target.push_back(0);
			target.insert(target.end(), w.begin() + i + k, w.end());
			for (const auto &[o, c] : image)
			{
				target[i] = o;
				add_entry(out, carrier.index(target), sign * c);
			}
		}
	}
	return out;
}

void check_family(const std::map<std::size_t, GradedMultiMap> &family, const TruncatedCoalgebra &carrier)
{
	for (const auto &[k, f] : family)
	{
		if (f.arity() != k)
			throw InputError("component m" + std::to_string(k) + " has arity " + std::to_string(f.arity()));
		if (f.domain().dim() != carrier.letters().dim())
			throw InputError("component m" + std::to_string(k) + " lives on a space of the wrong dimension");
		for (std::size_t i = 0; i < carrier.letters().dim(); ++i)
			if (f.domain().degree(i) != carrier.letters().degree(i) || f.codomain().degree(i) != carrier.letters().degree(i))
				throw InputError("component m" + std::to_string(k) + " is not expressed on A[1] degrees");
	}
}

} // namespace

SparseMatrix lift_to_carrier(const std::map<std::size_t, GradedMultiMap> &family, const TruncatedCoalgebra &carrier)
{
	check_family(family, carrier);
	SparseMatrix m(carrier.dim(), carrier.dim());
	for (std::size_t c = 0; c < carrier.dim(); ++c)
		m.set_column(c, lift_word(family, carrier, carrier.word(c)));
	return m;
}

Coderivation::Coderivation(std::map<std::size_t, GradedMultiMap> components, TruncatedCoalgebra carrier)
    : components_(std::move(components)), carrier_(std::move(carrier))
{
	for (const auto &[k, f] : components_)
	{
		if (f.degree() != 1)
			throw InputError("component m" + std::to_string(k) + " must have degree +1 on A[1], has degree " +
			                 std::to_string(f.degree()));
		if (carrier_.mode() == CarrierMode::two_truncated && k > 2)
			throw InputError("two-truncated carrier accepts only m1 and m2, got m" + std::to_string(k));
		if (k > carrier_.max_length())
			throw InputError("component m" + std::to_string(k) + " exceeds the truncation length " +
			                 std::to_string(carrier_.max_length()));
	}
	check_family(components_, carrier_);
}

const SparseMatrix &Coderivation::matrix() const
{
	if (!matrix_)
		matrix_ = lift_to_carrier(components_, carrier_);
	return *matrix_;
}

SparseVector Coderivation::apply_word(const Word &w) const { return lift_word(components_, carrier_, w); }

SparseVector Coderivation::apply(const SparseVector &v) const
{
	SparseVector out;
	for (const auto &[idx, c] : v)
		add_scaled(out, apply_word(carrier_.word(idx)), c);
	return out;
}

Coderivation build_coderivation(std::map<std::size_t, GradedMultiMap> ms, TruncatedCoalgebra carrier)
{
	return Coderivation(std::move(ms), std::move(carrier));
}

namespace {

// Columns of delta^p for every word of the given length, in carrier indexing.
std::vector<SparseVector> power_columns(const Coderivation &delta, unsigned p, std::size_t from_len)
{
	const auto &carrier = delta.carrier();
	std::vector<SparseVector> cols;
	for (auto idx : carrier.indices_of_length(from_len))
	{
		SparseVector v{{idx, Scalar(1)}};
		for (unsigned i = 0; i < p && !v.empty(); ++i)
			v = delta.matrix().apply(v);
		cols.push_back(std::move(v));
	}
	return cols;
}

} // namespace

SparseMatrix power_component(const Coderivation &delta, unsigned p, std::size_t from_len, std::size_t to_len)
{
	const auto &carrier = delta.carrier();
	if (from_len < 1 || to_len < 1 || from_len > carrier.max_length() || to_len > carrier.max_length())
		throw std::out_of_range("power_component: lengths outside the carrier");
	const std::size_t lo = carrier.offset(to_len);
	const std::size_t hi = lo + carrier.count(to_len);
	std::vector<SparseVector> cols = power_columns(delta, p, from_len);
	for (auto &col : cols)
	{
		SparseVector local;
		for (auto it = col.lower_bound(lo); it != col.end() && it->first < hi; ++it)
			local.emplace(it->first - lo, it->second);
		col = std::move(local);
	}
	return SparseMatrix::from_columns(carrier.count(to_len), std::move(cols));
}

StrictReport strict_nilpotency(const Coderivation &delta, unsigned N)
{
	const auto &carrier = delta.carrier();
	StrictReport report;
	report.truncation = carrier.max_length();
	for (std::size_t l = 1; l <= carrier.max_length(); ++l)
	{
		std::vector<SparseVector> cols = power_columns(delta, N, l);
		for (std::size_t i = 0; i < cols.size(); ++i)
		{
			if (cols[i].empty())
				continue;
			report.holds = false;
			Word w = carrier.word(carrier.offset(l) + i);
			report.first_failure = NilpotencyWitness{l, carrier.word(cols[i].begin()->first).size(), w};
			return report;
		}
	}
	return report;
}

std::vector<PlanarTree> supported_trees(std::size_t leaves, std::size_t internal,
                                        const std::map<std::size_t, GradedMultiMap> &ops)
{
	std::vector<PlanarTree> out;
	for (auto &t : enumerate_arity(leaves, internal))
	{
		bool ok = true;
		for (const auto &[k, count] : t.arity_profile())
		{
			auto it = ops.find(k);
			ok = ok && it != ops.end() && !it->second.is_zero();
		}
		if (ok)
			out.push_back(std::move(t));
	}
	return out;
}

bool CorestrictionReport::all_vanish() const
{
	return std::all_of(per_length.begin(), per_length.end(), [](const auto &e) { return e.vanishes; });
}

bool CorestrictionReport::routes_agree() const
{
	return std::all_of(per_length.begin(), per_length.end(), [](const auto &e) { return e.routes_agree; });
}

CorestrictionReport corestriction_identities(const Coderivation &delta, unsigned N, std::size_t l_max)
{
	const auto &carrier = delta.carrier();
	if (l_max > carrier.max_length())
		throw std::out_of_range("corestriction_identities: l_max exceeds the truncation length");
	CorestrictionReport report;
	report.N = N;
	report.truncation = carrier.max_length();
	const GradedSpace &letters = carrier.letters();
	for (std::size_t l = 1; l <= l_max; ++l)
	{
		CorestrictionEntry e;
		e.leaves = l;
		e.matrix_route = power_component(delta, N, l, 1);

		std::vector<PlanarTree> trees = supported_trees(l, N, delta.components());
		SparseMatrix tree_matrix(letters.dim(), carrier.count(l));
		if (!trees.empty())
		{
			std::vector<long> weights;
			for (const auto &t : trees)
				weights.push_back(firing_weight(t));
			tree_matrix = tree_sum(trees, weights, delta.components(), l).matrix();
		}
		e.tree_route = std::move(tree_matrix);
		e.vanishes = e.matrix_route.is_zero();
		e.routes_agree = e.matrix_route == e.tree_route;
		if (!e.vanishes)
			for (std::size_t c = 0; c < e.matrix_route.cols(); ++c)
				if (!e.matrix_route.column(c).empty())
				{
					e.witness = carrier.word(carrier.offset(l) + c);
					break;
				}
		report.per_length.push_back(std::move(e));
	}
	return report;
}

} // namespace ndepth
