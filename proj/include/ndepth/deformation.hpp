#pragma once

#include "ndepth/exactmath.hpp"
#include "ndepth/maurercartan.hpp"
#include "ndepth/structures.hpp"
#include "ndepth/tensorcoalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ndepth {

/// Elementary maps A[1]^{(x)n} -> A[1] for arities in [min_arity, max_arity],
/// optionally restricted to one shifted degree. Basis order: arity, then input
/// tuple (mixed radix), then output index.
class CochainSpace
{
public:
	struct Element
	{
		std::vector<std::size_t> inputs;
		std::size_t output;
	};

	CochainSpace(GradedSpace space, std::size_t min_arity, std::size_t max_arity, std::optional<int> degree = {});

	const GradedSpace &space() const { return space_; }
	std::size_t dim() const { return basis_.size(); }
	const Element &element(std::size_t i) const { return basis_.at(i); }
	std::optional<int> degree() const { return degree_; }
	/// Shifted degree of a basis element.
	int degree_of(std::size_t i) const;
	std::optional<std::size_t> index(const std::vector<std::size_t> &inputs, std::size_t output) const;

	/// The basis element as a map on A[1].
	GradedMultiMap elementary(std::size_t i) const;
	/// sum_i v_i * lift(e_i) on the carrier.
	SparseMatrix lift(const SparseVector &v, const TruncatedCoalgebra &carrier) const;
	/// Coordinates of a map on A[1]; entries outside the space throw InputError.
	SparseVector coordinates(const GradedMultiMap &shifted_map) const;
	/// Corestriction of a coderivation matrix, read off on words of the covered arities.
	SparseVector corestriction(const SparseMatrix &op, const TruncatedCoalgebra &carrier) const;
	std::string describe(std::size_t i) const; // "m2(a,b) -> c"

private:
	GradedSpace space_;
	ShiftedSpace shifted_;
	std::size_t min_arity_, max_arity_;
	std::optional<int> degree_;
	std::vector<Element> basis_;
	std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::size_t> index_;
};

struct DeformationProblem
{
	AlgebraPresentation algebra;
	unsigned N = 2;
	unsigned M = 2;
	unsigned base_power = 2;     // deformations over k[h]/(h^p)
	std::size_t truncation = 0;  // carrier length; 0 picks the default below

	/// Algebras in degree 0: r (M + 1) with r = max(2, largest arity), long enough
	/// that ker t_M and ker t_{M+1} no longer change with the length. Graded
	/// algebras: M + 1.
	std::size_t carrier_length() const;
	/// r (M + 1): on algebras in degree 0, ker t_k for k <= M + 1 is the same on every longer carrier.
	std::size_t stable_length() const;
};

/// Strictly N-nilpotent codifferential of the algebra on T^{<=L}(A[1]).
/// Throws PreconditionError when delta^N != 0 on the carrier (corestriction-only inputs included).
Coderivation strict_codifferential(const AlgebraPresentation &a, unsigned N, std::size_t L);

/// Operator matrices on the carrier are flattened column-major: entry (r, c) -> c * dim + r.
SparseVector flatten(const SparseMatrix &op);

/// On T^{<=L}(A[1]), L = p.carrier_length(). Matrix of f -> sum_{i=0}^{k-1} delta^i f delta^{k-1-i} for k >= 2, and of the
/// graded commutator f -> delta f - (-1)^{|f|} f delta for k = 1; columns indexed by
/// the source basis, rows by flattened carrier operators.
SparseMatrix t_operator(const DeformationProblem &p, unsigned k, const CochainSpace &source);
/// The graded commutator as a map between cochain spaces (Hochschild differential for algebras).
SparseMatrix commutator_cochains(const DeformationProblem &p, const CochainSpace &source, const CochainSpace &target);

/// C^2 (shifted degree 1) has arities 1..A with A = min(M + 1, L); C^1 (shifted
/// degree 0) stops at A - (r - 1), r the largest operation arity, so t_1 lands in C^2.
CochainSpace cochains_of_degree(const DeformationProblem &p, int degree);

struct CohomologyReport
{
	unsigned N = 0;
	unsigned M = 0;
	std::size_t truncation = 0;
	std::size_t dim_c1 = 0;
	std::size_t dim_c2 = 0;
	std::size_t dim_ker_tM = 0;
	std::size_t dim_im_t1 = 0;
	std::size_t dim_H = 0;
};

/// ker t_M / im t_1 on C^2; verifies t_M t_1 = 0 first (PreconditionError otherwise).
CohomologyReport cohomology_HNM(const DeformationProblem &p);

struct TelescopeReport
{
	unsigned k = 0;
	bool vanishes = false; // t_k t_1 == 0 as a matrix product
};

std::vector<TelescopeReport> telescoping(const DeformationProblem &p, unsigned k_max);

struct InclusionReport
{
	std::size_t dim_ker_M = 0;
	std::size_t dim_ker_M1 = 0;
	bool included = false;
	std::optional<SparseVector> witness; // in ker t_M, outside ker t_{M+1}
};

/// ker t_M inside ker t_{M+1}, checked on each kernel basis vector on the carrier.
InclusionReport kernel_inclusion(const DeformationProblem &p);

struct CertificateCheck
{
	bool kernel_M = false;          // t_M f = 0, by word-by-word evaluation
	bool kernel_M_minus_1 = false;  // t_{M-1} f = 0, same evaluation
	/// For ungraded algebras with only a product and (N, M) = (2, 3): the two
	/// identities in the product and f, evaluated on all basis tuples.
	std::optional<bool> identity_order_three;
	std::optional<bool> identity_order_two;
	std::optional<std::vector<std::string>> witness; // tuple violating the second identity
};

struct ProperSearchResult
{
	std::optional<SparseVector> certificate; // coordinates in C^2
	std::optional<CertificateCheck> check;
	std::size_t dim_ker_M = 0;
	std::size_t dim_ker_M_minus_1 = 0;
	std::size_t dim_im_t1 = 0;
};

/// Element of ker t_M outside ker t_{M-1} + im t_1, if any. Requires M > N.
ProperSearchResult proper_search(const DeformationProblem &p);
CertificateCheck verify_certificate(const DeformationProblem &p, const SparseVector &f);

/// Deformation delta + sum_j h^j lift(terms[j]) with terms[0] = 0.
struct DeformationData
{
	std::vector<SparseVector> terms; // C^2 coordinates, index = power of h
};

struct FullCheckReport
{
	bool deformation = false;                  // (delta + e)^M == 0
	HMatrix residual;                          // (delta + e)^M
	bool first_order_kernel = false;           // t_M(terms[1]) == 0
	bool matches_first_order = false;          // residual's h-coefficient == t_M(terms[1])
	std::optional<bool> agrees_with_equation;  // p >= 3: both verdicts of mc_residual agree with the direct power
};

FullCheckReport full_check(const DeformationProblem &p, const DeformationData &e);

} // namespace ndepth
