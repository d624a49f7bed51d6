#pragma once

#include "ndepth/graded.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ndepth {

/// Planar rooted tree. Vertex 0 is the root; it has exactly one child. Leaves
/// have no children, every other vertex is internal with arity >= 1. Children
/// are ordered left to right.
///
/// Canonical serialization: `*` for a leaf, `u(x)` for a unary vertex,
/// `b(x,y)` for a binary vertex and `m<k>(x1,...,xk)` for arity k >= 3. The
/// root itself is implicit, so the two-vertex tree is `*`.
class PlanarTree
{
public:
	struct Vertex
	{
		std::optional<std::size_t> parent;
		std::vector<std::size_t> children;
	};

	/// The two-vertex tree (root plus a single leaf).
	static PlanarTree leaf();
	/// New internal vertex of arity children.size() under a fresh root.
	static PlanarTree graft(const std::vector<PlanarTree> &children);
	static PlanarTree parse(std::string_view text); // throws InputError

	const std::vector<Vertex> &vertices() const { return vertices_; }
	std::size_t top() const { return vertices_[0].children.front(); }

	std::size_t leaf_count() const;
	std::size_t internal_count() const;
	/// arity -> number of internal vertices of that arity
	std::map<std::size_t, std::size_t> arity_profile() const;
	/// Operadic degree: sum over internal vertices of (2 - arity).
	int degree() const;

	bool is_leaf(std::size_t v) const { return v != 0 && vertices_[v].children.empty(); }
	std::size_t leaves_below(std::size_t v) const;
	std::size_t internal_below(std::size_t v) const;

	std::string serialize() const;
	friend bool operator==(const PlanarTree &a, const PlanarTree &b) { return a.serialize() == b.serialize(); }

private:
	std::vector<Vertex> vertices_;

	std::string serialize_from(std::size_t v) const;
	std::size_t append_subtree(const PlanarTree &src, std::size_t src_v, std::size_t parent);
};

/// RT_l^{u,b}: planar trees with l leaves, u unary and b binary internal vertices,
/// sorted by canonical serialization. Empty unless l == b + 1.
std::vector<PlanarTree> enumerate_ub(std::size_t leaves, std::size_t unary, std::size_t binary);
/// RT_l^n: planar trees with l leaves and n internal vertices of any arity >= 1.
std::vector<PlanarTree> enumerate_arity(std::size_t leaves, std::size_t internal);
/// RBT_n: planar binary trees with n leaves (Catalan(n-1) of them).
std::vector<PlanarTree> enumerate_binary(std::size_t leaves);

/// Signed count of the orders in which the internal vertices of T can be fired
/// bottom-up (each vertex after all of its internal descendants). The sign of an
/// order is the parity of the permutation taking it to the reference order used
/// by compile_operator (children right to left, each subtree completed before
/// its parent). This is the multiplicity with which T appears in the
/// corestriction of delta^n when every vertex operator is odd.
long firing_weight(const PlanarTree &t);

/// O_T on A[1]^{(x) l(T)} -> A[1]: each internal vertex of arity k carries ops.at(k),
/// composed with mechanically generated Koszul signs (a child's operator moves past
/// the inputs of its left siblings). The leaf-only tree compiles to the identity.
/// Throws std::invalid_argument if an arity has no operator.
GradedMultiMap compile_operator(const PlanarTree &t, const std::map<std::size_t, GradedMultiMap> &ops);

/// Sum over trees of weight(T) * O_T, as a GradedMultiMap of arity `leaves`.
GradedMultiMap tree_sum(const std::vector<PlanarTree> &trees, const std::vector<long> &weights,
                        const std::map<std::size_t, GradedMultiMap> &ops, std::size_t leaves);

} // namespace ndepth
