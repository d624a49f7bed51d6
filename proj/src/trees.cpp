#include "ndepth/trees.hpp"

#include "ndepth/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>
#include <tuple>

namespace ndepth {

PlanarTree PlanarTree::leaf()
{
	PlanarTree t;
	t.vertices_ = {Vertex{std::nullopt, {1}}, Vertex{0, {}}};
	return t;
}

std::size_t PlanarTree::append_subtree(const PlanarTree &src, std::size_t src_v, std::size_t parent)
{
	std::size_t id = vertices_.size();
	vertices_.push_back(Vertex{parent, {}});
	for (auto c : src.vertices_[src_v].children)
	{
		std::size_t child = append_subtree(src, c, id);
		vertices_[id].children.push_back(child);
	}
	return id;
}

PlanarTree PlanarTree::graft(const std::vector<PlanarTree> &children)
{
	if (children.empty())
		throw std::invalid_argument("PlanarTree::graft: internal vertices need at least one child");
	PlanarTree t;
	t.vertices_ = {Vertex{std::nullopt, {1}}, Vertex{0, {}}};
	for (const auto &c : children)
	{
		std::size_t id = t.append_subtree(c, c.top(), 1);
		t.vertices_[1].children.push_back(id);
	}
	return t;
}

namespace {

struct TreeParser
{
	std::string_view text;
	std::size_t pos = 0;

	[[noreturn]] void fail(const std::string &what) const
	{
		throw InputError("bad tree serialization '" + std::string(text) + "' at offset " + std::to_string(pos) +
		                 ": " + what);
	}

	void expect(char c)
	{
		if (pos >= text.size() || text[pos] != c)
			fail(std::string("expected '") + c + "'");
		++pos;
	}

	PlanarTree parse_node()
	{
		if (pos >= text.size())
			fail("unexpected end");
		char c = text[pos];
		if (c == '*')
		{
			++pos;
			return PlanarTree::leaf();
		}
		std::size_t arity = 0;
		if (c == 'u')
		{
			arity = 1;
			++pos;
		}
		else if (c == 'b')
		{
			arity = 2;
			++pos;
		}
		else if (c == 'm')
		{
			++pos;
			std::size_t start = pos;
			while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
				++pos;
			if (start == pos)
				fail("missing arity after 'm'");
			arity = std::stoul(std::string(text.substr(start, pos - start)));
			if (arity < 1)
				fail("arity must be positive");
		}
		else
			fail("unknown vertex marker");
		expect('(');
		std::vector<PlanarTree> kids;
		for (std::size_t i = 0; i < arity; ++i)
		{
			if (i > 0)
				expect(',');
			kids.push_back(parse_node());
		}
		expect(')');
		return PlanarTree::graft(kids);
	}
};

} // namespace

PlanarTree PlanarTree::parse(std::string_view text)
{
	TreeParser p{text};
	PlanarTree t = p.parse_node();
	if (p.pos != text.size())
		p.fail("trailing characters");
	return t;
}

std::size_t PlanarTree::leaf_count() const
{
	std::size_t n = 0;
	for (std::size_t v = 1; v < vertices_.size(); ++v)
		n += vertices_[v].children.empty();
	return n;
}

std::size_t PlanarTree::internal_count() const { return vertices_.size() - 1 - leaf_count(); }

std::map<std::size_t, std::size_t> PlanarTree::arity_profile() const
{
	std::map<std::size_t, std::size_t> p;
	for (std::size_t v = 1; v < vertices_.size(); ++v)
		if (!vertices_[v].children.empty())
			++p[vertices_[v].children.size()];
	return p;
}

int PlanarTree::degree() const
{
	int d = 0;
	for (const auto &[k, count] : arity_profile())
		d += static_cast<int>(count) * (2 - static_cast<int>(k));
	return d;
}

std::size_t PlanarTree::leaves_below(std::size_t v) const
{
	if (is_leaf(v))
		return 1;
	std::size_t n = 0;
	for (auto c : vertices_[v].children)
		n += leaves_below(c);
	return n;
}

std::size_t PlanarTree::internal_below(std::size_t v) const
{
	if (is_leaf(v))
		return 0;
	std::size_t n = v == 0 ? 0 : 1;
	for (auto c : vertices_[v].children)
		n += internal_below(c);
	return n;
}

std::string PlanarTree::serialize_from(std::size_t v) const
{
	const auto &kids = vertices_[v].children;
	if (kids.empty())
		return "*";
	std::string s;
	if (kids.size() == 1)
		s = "u(";
	else if (kids.size() == 2)
		s = "b(";
	else
		s = "m" + std::to_string(kids.size()) + "(";
	for (std::size_t i = 0; i < kids.size(); ++i)
	{
		if (i > 0)
			s += ',';
		s += serialize_from(kids[i]);
	}
	return s + ")";
}

std::string PlanarTree::serialize() const { return serialize_from(top()); }

namespace {

using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

const std::vector<std::string> &gen_ub(std::size_t l, std::size_t u, std::size_t b, std::map<Key, std::vector<std::string>> &memo)
{
	Key key{l, u, b};
	if (auto it = memo.find(key); it != memo.end())
		return it->second;
	std::vector<std::string> out;
	if (l == b + 1)
	{
		if (l == 1 && u == 0 && b == 0)
			out.push_back("*");
		if (u >= 1)
			for (const auto &s : gen_ub(l, u - 1, b, memo))
				out.push_back("u(" + s + ")");
		if (b >= 1)
			for (std::size_t b1 = 0; b1 + 1 <= b; ++b1)
				for (std::size_t u1 = 0; u1 <= u; ++u1)
				{
					const auto &left = gen_ub(b1 + 1, u1, b1, memo);
					const auto &right = gen_ub(l - b1 - 1, u - u1, b - 1 - b1, memo);
					for (const auto &x : left)
						for (const auto &y : right)
							out.push_back("b(" + x + "," + y + ")");
				}
	}
	return memo.emplace(key, std::move(out)).first->second;
}

// Splits `total` into `parts` ordered pieces, each >= minimum.
void for_each_split(std::size_t total, std::size_t parts, std::size_t minimum,
                    const std::function<void(const std::vector<std::size_t> &)> &fn)
{
	std::vector<std::size_t> cur;
	std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t left) {
		if (left == 1)
		{
			if (remaining >= minimum)
			{
				cur.push_back(remaining);
				fn(cur);
				cur.pop_back();
			}
			return;
		}
		for (std::size_t x = minimum; x + minimum * (left - 1) <= remaining; ++x)
		{
			cur.push_back(x);
			rec(remaining - x, left - 1);
			cur.pop_back();
		}
	};
	if (parts == 0)
		return;
	rec(total, parts);
}

const std::vector<std::string> &gen_arity(std::size_t l, std::size_t n,
                                          std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> &memo)
{
	auto key = std::make_pair(l, n);
	if (auto it = memo.find(key); it != memo.end())
		return it->second;
	std::vector<std::string> out;
	if (n == 0)
	{
		if (l == 1)
			out.push_back("*");
	}
	else
	{
		for (std::size_t k = 1; k <= l; ++k)
		{
			std::string head = k == 1 ? "u(" : k == 2 ? "b(" : "m" + std::to_string(k) + "(";
			for_each_split(l, k, 1, [&](const std::vector<std::size_t> &leaf_split) {
				for_each_split(n - 1, k, 0, [&](const std::vector<std::size_t> &vertex_split) {
					std::vector<std::string> partial{head};
					for (std::size_t j = 0; j < k; ++j)
					{
						const auto &kids = gen_arity(leaf_split[j], vertex_split[j], memo);
						std::vector<std::string> next;
						for (const auto &p : partial)
							for (const auto &c : kids)
								next.push_back(p + (j > 0 ? "," : "") + c);
						partial = std::move(next);
						if (partial.empty())
							return;
					}
					for (auto &p : partial)
						out.push_back(p + ")");
				});
			});
		}
	}
	return memo.emplace(key, std::move(out)).first->second;
}

std::vector<PlanarTree> to_trees(std::vector<std::string> names)
{
	std::sort(names.begin(), names.end());
	std::vector<PlanarTree> out;
	out.reserve(names.size());
	for (const auto &s : names)
		out.push_back(PlanarTree::parse(s));
	return out;
}

} // namespace

std::vector<PlanarTree> enumerate_ub(std::size_t leaves, std::size_t unary, std::size_t binary)
{
	if (leaves == 0)
		throw std::invalid_argument("enumerate_ub: need at least one leaf");
	std::map<Key, std::vector<std::string>> memo;
	return to_trees(gen_ub(leaves, unary, binary, memo));
}

std::vector<PlanarTree> enumerate_arity(std::size_t leaves, std::size_t internal)
{
	if (leaves == 0)
		throw std::invalid_argument("enumerate_arity: need at least one leaf");
	std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> memo;
	return to_trees(gen_arity(leaves, internal, memo));
}

std::vector<PlanarTree> enumerate_binary(std::size_t leaves) { return enumerate_ub(leaves, 0, leaves - 1); }

long firing_weight(const PlanarTree &t)
{
	const auto &vs = t.vertices();
	std::vector<std::size_t> reference;
	std::function<void(std::size_t)> ref = [&](std::size_t v) {
		const auto &kids = vs[v].children;
		for (auto it = kids.rbegin(); it != kids.rend(); ++it)
			if (!t.is_leaf(*it))
				ref(*it);
		reference.push_back(v);
	};
	if (!t.is_leaf(t.top()))
		ref(t.top());
	const std::size_t n = reference.size();
	if (n == 0)
		return 1;

	std::map<std::size_t, std::size_t> rank_of;
	for (std::size_t i = 0; i < n; ++i)
		rank_of[reference[i]] = i;
	std::vector<std::size_t> pending(vs.size(), 0); // unfired internal children
	for (auto v : reference)
		for (auto c : vs[v].children)
			if (!t.is_leaf(c))
				++pending[v];

	std::vector<bool> fired(vs.size(), false);
	std::vector<std::size_t> fired_ranks;
	long total = 0;
	std::function<void(std::size_t, int)> rec = [&](std::size_t depth, int sign) {
		if (depth == n)
		{
			total += sign;
			return;
		}
		for (auto v : reference)
		{
			if (fired[v] || pending[v] != 0)
				continue;
			std::size_t r = rank_of[v];
			std::size_t inversions = 0;
			for (auto fr : fired_ranks)
				inversions += fr > r;
			fired[v] = true;
			fired_ranks.push_back(r);
			std::size_t parent = *vs[v].parent;
			if (parent != 0)
				--pending[parent];
			rec(depth + 1, inversions % 2 == 0 ? sign : -sign);
			if (parent != 0)
				++pending[parent];
			fired_ranks.pop_back();
			fired[v] = false;
		}
	};
	rec(0, 1);
	return total;
}

namespace {

struct Compiler
{
	const PlanarTree &tree;
	const std::map<std::size_t, GradedMultiMap> &ops;
	const GradedSpace &space;
	std::vector<int> subtree_degree;

	int compute_degrees(std::size_t v)
	{
		int d = 0;
		if (!tree.is_leaf(v))
		{
			d = ops.at(tree.vertices()[v].children.size()).degree();
			for (auto c : tree.vertices()[v].children)
				d += compute_degrees(c);
		}
		subtree_degree[v] = d;
		return d;
	}

	SparseVector eval(std::size_t v, const Tuple &in, std::size_t &pos) const
	{
		if (tree.is_leaf(v))
			return SparseVector{{in[pos++], Scalar(1)}};
		const auto &kids = tree.vertices()[v].children;
		std::vector<SparseVector> args;
		args.reserve(kids.size());
		int sign = 1;
		int consumed_degree = 0;
		for (auto c : kids)
		{
			sign *= koszul_sign(consumed_degree, subtree_degree[c]);
			std::size_t before = pos;
			args.push_back(eval(c, in, pos));
			for (std::size_t i = before; i < pos; ++i)
				consumed_degree += space.degree(in[i]);
			if (args.back().empty())
				return {};
		}
		return scaled(ops.at(kids.size()).apply(args), sign);
	}
};

} // namespace

GradedMultiMap compile_operator(const PlanarTree &t, const std::map<std::size_t, GradedMultiMap> &ops)
{
	if (ops.empty())
		throw std::invalid_argument("compile_operator: no operators supplied");
	for (const auto &[k, count] : t.arity_profile())
		if (!ops.count(k))
			throw std::invalid_argument("compile_operator: no operator for arity " + std::to_string(k));
	const GradedSpace &space = ops.begin()->second.domain();
	Compiler comp{t, ops, space, std::vector<int>(t.vertices().size(), 0)};
	int degree = comp.compute_degrees(t.top());
	const std::size_t l = t.leaf_count();
	GradedMultiMap out(space, l, space, degree);
	for (const auto &in : all_tuples(space.dim(), l))
	{
		std::size_t pos = 0;
		for (const auto &[o, c] : comp.eval(t.top(), in, pos))
			out.add(in, o, c);
	}
	return out;
}

GradedMultiMap tree_sum(const std::vector<PlanarTree> &trees, const std::vector<long> &weights,
                        const std::map<std::size_t, GradedMultiMap> &ops, std::size_t leaves)
{
	if (trees.size() != weights.size())
		throw std::invalid_argument("tree_sum: one weight per tree required");
	const GradedSpace &space = ops.begin()->second.domain();
	SparseMatrix acc(space.dim(), int_pow(space.dim(), leaves));
	int degree = 0;
	if (!trees.empty())
		for (const auto &[k, count] : trees.front().arity_profile())
			degree += static_cast<int>(count) * ops.at(k).degree();
	for (std::size_t i = 0; i < trees.size(); ++i)
	{
		if (weights[i] == 0)
			continue;
		GradedMultiMap o = compile_operator(trees[i], ops);
		if (o.arity() != leaves)
			throw std::invalid_argument("tree_sum: tree has the wrong number of leaves");
		acc = acc + Scalar(weights[i]) * o.matrix();
	}
	return GradedMultiMap::from_matrix(space, leaves, space, degree, acc);
}

} // namespace ndepth
