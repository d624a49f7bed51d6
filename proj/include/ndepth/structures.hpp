#pragma once

#include "ndepth/graded.hpp"
#include "ndepth/tensorcoalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ndepth {

enum class StructureKind
{
	ncomplex,
	ndga,
	ndgla,
	nassociative,
	depthN,
	ainfN,
	ncgc
};

std::string to_string(StructureKind kind);
StructureKind parse_kind(const std::string &text); // throws InputError

/// Structure constants of an algebra in the unshifted convention: mult has
/// degree 0, diff degree 1, bracket degree 0, higher[k] degree 2 - k.
struct AlgebraPresentation
{
	GradedSpace space;
	std::optional<GradedMultiMap> mult;
	std::optional<GradedMultiMap> diff;
	std::optional<GradedMultiMap> bracket;
	std::map<std::size_t, GradedMultiMap> higher;
	StructureKind declared_kind = StructureKind::ncomplex;
	unsigned declared_N = 2;

	/// Throws InputError when a present component has the wrong arity, degree
	/// or spaces, or when the declared kind lacks a required component.
	void check_signature() const;

	/// diff -> m1, mult -> m2, higher -> m_k, all moved to A[1].
	std::map<std::size_t, GradedMultiMap> shifted_components() const;
};

struct AxiomVerdict
{
	std::string axiom;
	bool holds = true;
	std::optional<Tuple> witness; // basis tuple on which the axiom fails
	SparseVector residual;        // value of the axiom at the witness
};

struct ValidationReport
{
	StructureKind kind = StructureKind::ncomplex;
	unsigned N = 0;
	std::vector<AxiomVerdict> axioms;
	std::optional<StrictReport> strict;
	std::optional<CorestrictionReport> corestriction;
	std::optional<bool> proper;
	std::string proper_detail;

	bool axioms_hold() const;
	bool strict_holds() const { return strict && strict->holds; }
	bool corestriction_holds() const { return corestriction && corestriction->all_vanish(); }
	/// Axioms hold and, when computed, the corestriction identities vanish.
	bool valid() const;
	const AxiomVerdict *axiom(const std::string &name) const;
};

ValidationReport validate_ncomplex(const AlgebraPresentation &p, unsigned N);
ValidationReport validate_ndga(const AlgebraPresentation &p, unsigned N);
ValidationReport validate_ndgla(const AlgebraPresentation &p, unsigned N);
/// Corestriction verdict from the binary trees with N+1 leaves, strict verdict
/// on T^{<=L}(A[1]) with L = max(truncation, N + 2).
ValidationReport validate_nassociative(const AlgebraPresentation &p, unsigned N, std::size_t truncation = 0);
/// Full mode: strict and corestriction verdicts on T^{<=L}(A[1]). Two-truncated
/// mode: strict verdict on T^{<=2}(A[1]) and corestriction identities for
/// l = 1..N+1 computed on a full carrier of length N+1.
ValidationReport validate_ainfN(const AlgebraPresentation &p, unsigned N, std::size_t L, CarrierMode mode);

/// Bracket [a,b] = ab - (-1)^{|a||b|} ba. Throws PreconditionError on an invalid N-dga.
AlgebraPresentation commutator_dgla(const AlgebraPresentation &p, unsigned N);

/// End(C) with composition and d(f) = delta f - (-1)^{|f|} f delta, declared as a
/// (2N-1)-dga. Basis element "E(x,y)" maps y to x. Throws PreconditionError
/// unless delta^N = 0 on C.
AlgebraPresentation end_dga(const AlgebraPresentation &c, unsigned N);

/// dim ker d^p / im d^{N-p} for p = 1..N-1. Throws PreconditionError if d^N != 0.
std::vector<std::size_t> kapranov_cohomology(const AlgebraPresentation &p, unsigned N);
std::vector<std::size_t> kapranov_cohomology(const SparseMatrix &d, unsigned N);

struct TensorProductReport
{
	unsigned N = 0, M = 0;
	std::size_t truncation = 0;
	std::size_t carrier_dim = 0;
	bool strict_at_bound = false;   // (X + Y)^{N+M-1} = 0
	bool proper_below_bound = false; // (X + Y)^{N+M-2} != 0
	unsigned nilpotency_order = 0;  // least k <= N+M-1 with (X + Y)^k = 0, 0 if none
	SparseMatrix operator_matrix;
};

/// delta_A (x) 1 + 1 (x) delta_B on T^{<=L}(A[1]) (x) T^{<=L}(B[1]), the second
/// term with the Koszul sign of the left factor. Throws PreconditionError unless
/// both inputs are strictly nilpotent of orders N and M at truncation L.
TensorProductReport tensor_product_structure(const AlgebraPresentation &a, unsigned N,
                                             const AlgebraPresentation &b, unsigned M, std::size_t L);

/// Components f_k : A[1]^{(x)k} -> B[1] of degree 0.
struct MorphismData
{
	std::map<std::size_t, GradedMultiMap> components;
};

/// Coalgebra lift F(a_1..a_n) = sum over compositions of f_{k_1}(..) (x) ... (x) f_{k_j}(..).
SparseMatrix lift_morphism(const MorphismData &f, const TruncatedCoalgebra &source, const TruncatedCoalgebra &target);

struct MorphismReport
{
	bool commutes = false;
	std::optional<Word> witness; // source word on which F delta_A != delta_B F
	std::vector<std::size_t> source_cohomology, target_cohomology, induced_rank;
	bool quasi_iso = false;
	std::optional<unsigned> failing_p;
};

MorphismReport morphism_check(const MorphismData &f, const AlgebraPresentation &a, const AlgebraPresentation &b,
                              std::size_t L);
/// morphism_check plus the induced maps on kapranov_cohomology of (A, m1), (B, m1).
MorphismReport quasi_iso_check(const MorphismData &f, const AlgebraPresentation &a, const AlgebraPresentation &b,
                               unsigned N, std::size_t L);

struct IdentityTerm
{
	std::string bracketing; // e.g. "((ab)c)d"
	Scalar coefficient;
};

/// The corestriction of delta^N for a single binary product, as a signed sum
/// of bracketings of N+1 letters. Obtained by evaluating on the free magma of
/// contiguous sub-words; terms with coefficient zero are dropped.
std::vector<IdentityTerm> nassociative_identity(unsigned N);

} // namespace ndepth
