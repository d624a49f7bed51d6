#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ndepth {

/// Exact rational scalar; GMP keeps it canonicalized (lowest terms, positive
/// denominator) after every arithmetic operation.
using Scalar = mpq_class;

/// Parses "7", "-3", "1/3" or "-4/6" (reduced on return). Throws InputError.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar &x);

/// Sparse vector: index -> nonzero coefficient. Zero entries are never stored.
using SparseVector = std::map<std::size_t, Scalar>;

void add_scaled(SparseVector &target, const SparseVector &source, const Scalar &factor);
void add_entry(SparseVector &target, std::size_t index, const Scalar &value);
SparseVector scaled(const SparseVector &v, const Scalar &factor);

/// Column-major sparse matrix over the rationals with fixed dimensions.
class SparseMatrix
{
public:
	SparseMatrix() = default;
	SparseMatrix(std::size_t rows, std::size_t cols);

	static SparseMatrix identity(std::size_t n);
	static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns);
	static SparseMatrix from_rows(std::size_t cols, const std::vector<SparseVector> &rows);

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_.size(); }
	std::size_t nonzeros() const;
	bool is_zero() const;

	Scalar get(std::size_t r, std::size_t c) const;
	void set(std::size_t r, std::size_t c, const Scalar &value);
	void add(std::size_t r, std::size_t c, const Scalar &value);

	const SparseVector &column(std::size_t c) const { return cols_.at(c); }
	void set_column(std::size_t c, SparseVector v);

	SparseVector apply(const SparseVector &v) const;
	SparseMatrix transpose() const;
	std::vector<SparseVector> row_list() const;

	/// Sub-matrix picking the given rows (in order) and columns (in order).
	SparseMatrix block(const std::vector<std::size_t> &row_ids, const std::vector<std::size_t> &col_ids) const;
	SparseMatrix power(unsigned p) const;

	friend SparseMatrix operator*(const SparseMatrix &a, const SparseMatrix &b);
	friend SparseMatrix operator+(const SparseMatrix &a, const SparseMatrix &b);
	friend SparseMatrix operator-(const SparseMatrix &a, const SparseMatrix &b);
	friend SparseMatrix operator*(const Scalar &s, const SparseMatrix &a);
	friend bool operator==(const SparseMatrix &a, const SparseMatrix &b);

private:
	std::size_t rows_ = 0;
	std::vector<SparseVector> cols_;
};

/// Horizontal concatenation [a | b]; row counts must agree.
SparseMatrix hstack(const SparseMatrix &a, const SparseMatrix &b);

struct RankKernel
{
	std::size_t rank = 0;
	std::vector<SparseVector> kernel; // linearly independent, M v = 0 exactly
};

/// Exact Gaussian elimination to reduced row echelon form.
/// Pivot rule: columns left to right; among candidate rows take the sparsest,
/// ties broken by lowest row index.
RankKernel rank_kernel(const SparseMatrix &m);
std::size_t rank(const SparseMatrix &m);

/// dim(ker a) - rank(b). Requires a * b == 0, throws PreconditionError otherwise.
std::size_t subquotient_dim(const SparseMatrix &a, const SparseMatrix &b);

/// True when v lies in the column span of m.
bool in_column_span(const SparseMatrix &m, const SparseVector &v);

/// Incrementally grown basis of a subspace in row echelon form: every stored
/// vector has a distinct leading index with coefficient 1.
class EchelonBasis
{
public:
	/// Adds v to the span; returns false when v was already in it.
	bool insert(SparseVector v);
	bool contains(SparseVector v) const;
	std::size_t size() const { return rows_.size(); }
	std::vector<SparseVector> vectors() const;

private:
	std::map<std::size_t, SparseVector> rows_;
	void reduce(SparseVector &v) const;
};

} // namespace ndepth
