#pragma once

#include "ndepth/graded.hpp"
#include "ndepth/trees.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace ndepth {

using Word = std::vector<std::size_t>;

enum class CarrierMode
{
	full,         // T(A[1]) cut at tensor length L
	two_truncated // T^{<=2}(A[1])
};

/// Tensor coalgebra on A[1] truncated at a maximal word length. Words are
/// indexed length-lex: all words of length 1 first, then length 2, ...; within
/// a length in lexicographic (mixed-radix) order.
class TruncatedCoalgebra
{
public:
	TruncatedCoalgebra(ShiftedSpace base, std::size_t max_length, CarrierMode mode = CarrierMode::full);

	const ShiftedSpace &base() const { return base_; }
	/// The A[1] degrees as an ordinary graded space.
	const GradedSpace &letters() const { return letters_; }
	CarrierMode mode() const { return mode_; }
	std::size_t max_length() const { return max_length_; }
	std::size_t dim() const { return offsets_.back(); }

	std::size_t offset(std::size_t length) const { return offsets_.at(length - 1); }
	std::size_t count(std::size_t length) const;
	std::size_t index(const Word &w) const;
	Word word(std::size_t index) const;
	int degree(const Word &w) const;
	std::vector<std::size_t> indices_of_length(std::size_t length) const;

private:
	ShiftedSpace base_;
	GradedSpace letters_;
	std::size_t max_length_;
	CarrierMode mode_;
	std::vector<std::size_t> offsets_; // offsets_[n-1] = first index of length n; back() = dim
};

/// Coderivation on a truncated tensor coalgebra determined by its components
/// m_k : A[1]^{(x)k} -> A[1], each of degree +1:
///   delta(a_1..a_n) = sum_k sum_i (-1)^{|a_1|+...+|a_{i-1}|} (a_1..a_{i-1}, m_k(a_i..a_{i+k-1}), ..., a_n)
class Coderivation
{
public:
	/// Throws InputError on arity/degree mismatch, on k > L, and on k > 2 in
	/// two-truncated mode.
	Coderivation(std::map<std::size_t, GradedMultiMap> components, TruncatedCoalgebra carrier);

	const std::map<std::size_t, GradedMultiMap> &components() const { return components_; }
	const TruncatedCoalgebra &carrier() const { return carrier_; }
	/// Built on first use.
	const SparseMatrix &matrix() const;

	/// delta applied to a single word, as a vector over carrier indices.
	SparseVector apply_word(const Word &w) const;
	/// delta applied to a vector over carrier indices, without building the matrix.
	SparseVector apply(const SparseVector &v) const;

private:
	std::map<std::size_t, GradedMultiMap> components_;
	TruncatedCoalgebra carrier_;
	mutable std::optional<SparseMatrix> matrix_;
};

Coderivation build_coderivation(std::map<std::size_t, GradedMultiMap> ms, TruncatedCoalgebra carrier);

/// Lifts an arbitrary-degree family f_k to the coderivation sum_i 1^{i-1} (x) f_k (x) 1^{n-i-k+1},
/// with sign (-1)^{deg(f_k) * (|a_1|+...+|a_{i-1}|)}. Used for cochains and deformations.
SparseMatrix lift_to_carrier(const std::map<std::size_t, GradedMultiMap> &family, const TruncatedCoalgebra &carrier);

/// A[1]^{(x)from} -> A[1]^{(x)to} block of delta^p, in local mixed-radix indexing.
SparseMatrix power_component(const Coderivation &delta, unsigned p, std::size_t from_len, std::size_t to_len);

struct NilpotencyWitness
{
	std::size_t from_len = 0;
	std::size_t to_len = 0;
	Word word;
};

struct StrictReport
{
	bool holds = true;
	std::size_t truncation = 0;
	std::optional<NilpotencyWitness> first_failure;
};

/// delta^N == 0 as a matrix on the carrier. The witness is the first offending
/// (from length, to length, input word) in length-lex order.
StrictReport strict_nilpotency(const Coderivation &delta, unsigned N);

struct CorestrictionEntry
{
	std::size_t leaves = 0;
	bool vanishes = true;
	bool routes_agree = true;
	SparseMatrix matrix_route; // length-1 output block of delta^N on words of length `leaves`
	SparseMatrix tree_route;   // sum over RT_l^N of firing_weight(T) * O_T
	std::optional<Word> witness;
};

struct CorestrictionReport
{
	unsigned N = 0;
	std::size_t truncation = 0;
	std::vector<CorestrictionEntry> per_length;

	bool all_vanish() const;
	bool routes_agree() const;
};

/// For l = 1..l_max: the corestriction of delta^N on A[1]^{(x)l}, computed both
/// by matrix powers and by the weighted tree sum. l_max <= carrier length.
CorestrictionReport corestriction_identities(const Coderivation &delta, unsigned N, std::size_t l_max);

/// Trees of RT_l^N whose arities all have a component in `ops`.
std::vector<PlanarTree> supported_trees(std::size_t leaves, std::size_t internal,
                                        const std::map<std::size_t, GradedMultiMap> &ops);

} // namespace ndepth
