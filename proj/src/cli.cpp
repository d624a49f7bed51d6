#include "ndepth/cli.hpp"

#include "ndepth/deformation.hpp"
#include "ndepth/error.hpp"
#include "ndepth/io.hpp"
#include "ndepth/maurercartan.hpp"
#include "ndepth/operadcount.hpp"
#include "ndepth/structures.hpp"
#include "ndepth/trees.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ndepth {

using nlohmann::json;

namespace {

json header(const std::string &command)
{
	return {{"schema_version", schema_version}, {"command", command}};
}

std::string pass_fail(bool b) { return b ? "PASS" : "FAIL"; }
std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tuple_text(const Tuple &t, const GradedSpace &space)
{
	std::string s = "(";
	for (std::size_t i = 0; i < t.size(); ++i)
		s += (i ? "," : "") + space.name(t[i]);
	return s + ")";
}

std::string vector_text(const SparseVector &v, const GradedSpace &space)
{
	if (v.empty())
		return "0";
	std::string s;
	for (const auto &[i, c] : v)
	{
		Scalar a = abs(c);
		std::string term = (a == 1 ? "" : to_string(a) + " ") + space.name(i);
		s += s.empty() ? (c < 0 ? "-" + term : term) : (c < 0 ? " - " : " + ") + term;
	}
	return s;
}

/// Fixed-width columns, first row is the header.
void print_table(std::ostream &out, const std::vector<std::vector<std::string>> &rows, const std::string &indent = "  ")
{
	std::vector<std::size_t> width;
	for (const auto &r : rows)
		for (std::size_t i = 0; i < r.size(); ++i)
		{
			width.resize(std::max(width.size(), r.size()));
			width[i] = std::max(width[i], r[i].size());
		}
	for (const auto &r : rows)
	{
		std::string line = indent;
		for (std::size_t i = 0; i < r.size(); ++i)
			line += r[i] + (i + 1 < r.size() ? std::string(width[i] - r[i].size() + 2, ' ') : "");
		out << line << "\n";
	}
}

std::string str(long x) { return std::to_string(x); }
std::string str(const Scalar &x) { return to_string(x); }

// check

enum class Verdict
{
	strict,
	corestriction,
	both
};

ValidationReport validate(const InputDocument &doc, unsigned N)
{
	const AlgebraPresentation &p = doc.algebra;
	switch (p.declared_kind)
	{
	case StructureKind::ncomplex:
	case StructureKind::ncgc:
		return validate_ncomplex(p, N);
	case StructureKind::ndga:
		return validate_ndga(p, N);
	case StructureKind::ndgla:
		return validate_ndgla(p, N);
	case StructureKind::nassociative:
		return validate_nassociative(p, N, doc.truncation);
	case StructureKind::depthN:
		return validate_ainfN(p, N, 2, CarrierMode::two_truncated);
	case StructureKind::ainfN:
	{
		std::size_t top = 1;
		for (const auto &[k, f] : p.shifted_components())
			top = std::max(top, k);
		std::size_t L = doc.truncation ? doc.truncation : std::max<std::size_t>(top, N + 1);
		return validate_ainfN(p, N, L, doc.mode);
	}
	}
	throw InputError("unsupported kind");
}

json report_json(const ValidationReport &r, const GradedSpace &space)
{
	json j;
	j["kind"] = to_string(r.kind);
	j["N"] = r.N;
	j["axioms"] = json::array();
	for (const auto &a : r.axioms)
	{
		json x{{"axiom", a.axiom}, {"holds", a.holds}};
		x["witness"] = a.witness ? json(names_of(*a.witness, space)) : json(nullptr);
		x["residual"] = vector_json(a.residual, space);
		j["axioms"].push_back(x);
	}
	if (r.corestriction)
	{
		json c{{"truncation", r.corestriction->truncation},
		       {"all_vanish", r.corestriction->all_vanish()},
		       {"routes_agree", r.corestriction->routes_agree()},
		       {"per_length", json::array()}};
		for (const auto &e : r.corestriction->per_length)
			c["per_length"].push_back({{"leaves", e.leaves},
			                           {"vanishes", e.vanishes},
			                           {"routes_agree", e.routes_agree},
			                           {"witness", e.witness ? json(names_of(*e.witness, space)) : json(nullptr)}});
		j["corestriction"] = c;
	}
	else
		j["corestriction"] = nullptr;
	if (r.strict)
	{
		json s{{"holds", r.strict->holds}, {"truncation", r.strict->truncation}, {"first_failure", nullptr}};
		if (const auto &f = r.strict->first_failure)
			s["first_failure"] = {{"from_len", f->from_len}, {"to_len", f->to_len}, {"word", names_of(f->word, space)}};
		j["strict"] = s;
	}
	else
		j["strict"] = nullptr;
	j["proper"] = r.proper ? json(*r.proper) : json(nullptr);
	j["proper_detail"] = r.proper_detail;
	return j;
}

void print_report(std::ostream &out, const ValidationReport &r, const GradedSpace &space)
{
	for (const auto &a : r.axioms)
	{
		out << "  axiom " << a.axiom << ": " << pass_fail(a.holds);
		if (a.witness)
			out << " at " << tuple_text(*a.witness, space) << ", value " << vector_text(a.residual, space);
		out << "\n";
	}
	if (r.corestriction)
	{
		out << "  corestriction of delta^" << r.N << " (lengths 1.." << r.corestriction->per_length.size()
		    << "): " << pass_fail(r.corestriction->all_vanish()) << "\n";
		for (const auto &e : r.corestriction->per_length)
			if (!e.vanishes && e.witness)
				out << "    length " << e.leaves << " nonzero on " << tuple_text(*e.witness, space) << "\n";
		if (!r.corestriction->routes_agree())
			out << "    matrix and tree routes DISAGREE\n";
	}
	if (r.strict)
	{
		out << "  strict delta^" << r.N << " = 0 on T^{<=" << r.strict->truncation << "}: " << pass_fail(r.strict->holds);
		if (const auto &f = r.strict->first_failure)
			out << " at block (" << f->from_len << "," << f->to_len << "), word " << tuple_text(f->word, space);
		out << "\n";
	}
	if (r.proper)
		out << "  proper: " << yes_no(*r.proper) << " (" << r.proper_detail << ")\n";
}

int cmd_check(const std::string &file, unsigned N_opt, Verdict mode, bool as_json, std::ostream &out)
{
	InputDocument doc = load_document(file);
	unsigned N = N_opt ? N_opt : doc.algebra.declared_N;
	ValidationReport r = validate(doc, N);
	bool axioms = r.axioms_hold();
	bool pass = mode == Verdict::strict ? axioms && (!r.strict || r.strict->holds)
	                                    : axioms && (!r.corestriction || r.corestriction_holds());
	const char *mode_name = mode == Verdict::strict ? "strict" : mode == Verdict::corestriction ? "corestriction" : "both";
	if (as_json)
	{
		json j = header("check");
		j["file"] = file;
		j["mode"] = mode_name;
		j["report"] = report_json(r, doc.algebra.space);
		j["pass"] = pass;
		out << j.dump(2) << "\n";
	}
	else
	{
		out << "check " << file << ": " << to_string(r.kind) << ", N = " << N << "\n";
		print_report(out, r, doc.algebra.space);
		out << "verdict (" << mode_name << "): " << pass_fail(pass) << "\n";
	}
	return pass ? exit_pass : exit_fail;
}

// cohomology

int cmd_cohomology(const std::string &file, unsigned N_opt, bool as_json, std::ostream &out)
{
	InputDocument doc = load_document(file);
	unsigned N = N_opt ? N_opt : doc.algebra.declared_N;
	if (!doc.algebra.diff)
		throw InputError(file + ": cohomology --complex needs a differential m1");
	auto h = kapranov_cohomology(doc.algebra, N);
	if (as_json)
	{
		json j = header("cohomology");
		j["file"] = file;
		j["N"] = N;
		j["H"] = h;
		out << j.dump(2) << "\n";
	}
	else
	{
		out << "cohomology " << file << ": N = " << N << "\n";
		for (std::size_t p = 0; p < h.size(); ++p)
			out << "  H_" << p + 1 << " = ker d^" << p + 1 << " / im d^" << N - p - 1 << ": " << h[p] << "\n";
		out << "  acyclic: " << yes_no(std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; })) << "\n";
	}
	return exit_pass;
}

// deform

/// C^2 coordinates as unshifted structure constants, grouped by arity.
std::map<std::size_t, GradedMultiMap> cochain_maps(const CochainSpace &c, const SparseVector &v)
{
	GradedSpace letters = shift(c.space(), 1).materialize();
	std::map<std::size_t, GradedMultiMap> shifted;
	for (const auto &[i, x] : v)
	{
		const auto &e = c.element(i);
		auto it = shifted.try_emplace(e.inputs.size(), letters, e.inputs.size(), letters, c.degree_of(i)).first;
		it->second.add(e.inputs, e.output, x);
	}
	std::map<std::size_t, GradedMultiMap> out;
	for (const auto &[k, f] : shifted)
		out.emplace(k, to_unshifted(f, c.space(), c.space()));
	return out;
}

SparseVector cochain_coordinates(const CochainSpace &c, const std::map<std::size_t, GradedMultiMap> &maps)
{
	SparseVector v;
	for (const auto &[k, f] : maps)
		add_scaled(v, c.coordinates(to_shifted(f)), 1);
	return v;
}

json maps_json(const std::map<std::size_t, GradedMultiMap> &maps)
{
	json j = json::object();
	for (const auto &[k, f] : maps)
		j["m" + std::to_string(k)] = entries_json(f);
	return j;
}

void print_maps(std::ostream &out, const std::map<std::size_t, GradedMultiMap> &maps, const std::string &name)
{
	for (const auto &[k, f] : maps)
		for (const auto &[t, v] : f.entries())
			out << "    " << name << tuple_text(t, f.domain()) << " = " << vector_text(v, f.codomain()) << "\n";
}

struct DeformArgs
{
	std::string file;
	unsigned N = 0, M = 0;
	std::size_t truncation = 0;
	bool search_proper = false;
	unsigned full = 0;
	unsigned k_max = 0;
};

int cmd_deform(const DeformArgs &a, bool as_json, std::ostream &out)
{
	InputDocument doc = load_document(a.file);
	DeformationProblem p{doc.algebra, a.N ? a.N : doc.algebra.declared_N, a.M};
	p.truncation = a.truncation ? a.truncation : doc.truncation;
	if (p.M < p.N)
		throw InputError("deform needs M >= N");
	bool pass = true;
	json j = header("deform");
	j["file"] = a.file;
	j["N"] = p.N;
	j["M"] = p.M;
	j["truncation"] = p.carrier_length();
	std::ostringstream text;
	text << "deform " << a.file << ": N = " << p.N << ", M = " << p.M << ", carrier T^{<=" << p.carrier_length() << "}\n";
	bool short_carrier = p.carrier_length() < p.stable_length();
	j["carrier_below_stable_length"] = short_carrier;
	if (short_carrier)
		text << "  note: carrier shorter than " << p.stable_length()
		     << "; kernels of t_k can shrink on longer carriers\n";

	CohomologyReport h = cohomology_HNM(p);
	j["cohomology"] = {{"dim_C1", h.dim_c1}, {"dim_C2", h.dim_c2}, {"dim_ker_tM", h.dim_ker_tM},
	                   {"dim_im_t1", h.dim_im_t1}, {"dim_H", h.dim_H}};
	text << "  dim C^1 = " << h.dim_c1 << ", dim C^2 = " << h.dim_c2 << "\n";
	text << "  dim ker t_" << p.M << " = " << h.dim_ker_tM << ", dim im t_1 = " << h.dim_im_t1 << ", dim H^2_{" << p.N
	     << "," << p.M << "} = " << h.dim_H << "\n";

	unsigned k_max = a.k_max ? a.k_max : p.M + 1;
	j["telescoping"] = json::array();
	text << "  t_k t_1 = 0:";
	for (const auto &t : telescoping(p, k_max))
	{
		j["telescoping"].push_back({{"k", t.k}, {"vanishes", t.vanishes}});
		text << " k=" << t.k << " " << yes_no(t.vanishes);
		pass = pass && t.vanishes;
	}
	text << "\n";

	try
	{
		InclusionReport inc = kernel_inclusion(p);
		j["inclusion"] = {{"included", inc.included}, {"dim_ker_M", inc.dim_ker_M}, {"dim_ker_M1", inc.dim_ker_M1}};
		text << "  ker t_" << p.M << " in ker t_" << p.M + 1 << ": " << yes_no(inc.included) << " (dims " << inc.dim_ker_M
		     << ", " << inc.dim_ker_M1 << ")\n";
		pass = pass && inc.included;
	}
	catch (const PreconditionError &e)
	{
		j["inclusion"] = {{"skipped", e.what()}};
		text << "  ker t_" << p.M << " in ker t_" << p.M + 1 << ": not checked (" << e.what() << ")\n";
	}

	CochainSpace c2 = cochains_of_degree(p, 1);
	if (a.search_proper)
	{
		ProperSearchResult r = proper_search(p);
		json s{{"dim_ker_M", r.dim_ker_M}, {"dim_ker_M_minus_1", r.dim_ker_M_minus_1}, {"dim_im_t1", r.dim_im_t1}};
		text << "  proper class in ker t_" << p.M << " outside ker t_" << p.M - 1 << " + im t_1: ";
		if (r.certificate)
		{
			auto maps = cochain_maps(c2, *r.certificate);
			s["certificate"] = maps_json(maps);
			const CertificateCheck &c = *r.check;
			s["check"] = {{"kernel_M", c.kernel_M},
			              {"kernel_M_minus_1", c.kernel_M_minus_1},
			              {"identity_order_three", c.identity_order_three ? json(*c.identity_order_three) : json(nullptr)},
			              {"identity_order_two", c.identity_order_two ? json(*c.identity_order_two) : json(nullptr)},
			              {"witness", c.witness ? json(*c.witness) : json(nullptr)}};
			text << "found\n";
			print_maps(text, maps, "f");
			text << "    t_" << p.M << " f = 0: " << yes_no(c.kernel_M) << "; t_" << p.M - 1
			     << " f = 0: " << yes_no(c.kernel_M_minus_1) << "\n";
			if (c.identity_order_three)
				text << "    direct identities: order three " << yes_no(*c.identity_order_three) << ", order two "
				     << yes_no(c.identity_order_two.value_or(false)) << "\n";
			if (c.witness)
			{
				text << "    order-two identity fails at (";
				for (std::size_t i = 0; i < c.witness->size(); ++i)
					text << (i ? "," : "") << (*c.witness)[i];
				text << ")\n";
			}
		}
		else
		{
			s["certificate"] = nullptr;
			text << "none (dim ker t_" << p.M << " = " << r.dim_ker_M << ", dim ker t_" << p.M - 1 << " = "
			     << r.dim_ker_M_minus_1 << ")\n";
		}
		j["proper_search"] = s;
	}

	if (a.full)
	{
		if (doc.deformation.empty())
			throw InputError(a.file + ": --full needs deformation terms in the document");
		if (doc.deformation.size() > a.full - 1)
			throw InputError(a.file + ": " + std::to_string(doc.deformation.size()) + " deformation terms exceed h^" +
			                 std::to_string(a.full - 1));
		p.base_power = a.full;
		DeformationData data;
		data.terms.emplace_back();
		for (const auto &t : doc.deformation)
			data.terms.push_back(cochain_coordinates(c2, t));
		FullCheckReport r = full_check(p, data);
		j["full_check"] = {{"p", a.full},
		                   {"deformation", r.deformation},
		                   {"first_order_kernel", r.first_order_kernel},
		                   {"matches_first_order", r.matches_first_order},
		                   {"agrees_with_equation", r.agrees_with_equation ? json(*r.agrees_with_equation) : json(nullptr)}};
		text << "  full check over k[h]/(h^" << a.full << "): (delta + e)^" << p.M << " = 0: " << yes_no(r.deformation)
		     << "; t_" << p.M << "(f_1) = 0: " << yes_no(r.first_order_kernel) << "; h-coefficient equals t_" << p.M
		     << "(f_1): " << yes_no(r.matches_first_order);
		if (r.agrees_with_equation)
			text << "; coefficient system agrees: " << yes_no(*r.agrees_with_equation);
		text << "\n";
		pass = pass && r.deformation && r.matches_first_order && r.agrees_with_equation.value_or(true);
	}
	j["pass"] = pass;
	if (as_json)
		out << j.dump(2) << "\n";
	else
		out << text.str() << "verdict: " << pass_fail(pass) << "\n";
	return pass ? exit_pass : exit_fail;
}

// mc

json polynomial_json(const NCPolynomial &p)
{
	json j = json::array();
	for (const auto &[w, c] : p.terms())
		j.push_back({w, coefficient_json(c)});
	return j;
}

std::string assembled_text(const std::vector<std::pair<Composition, Scalar>> &terms)
{
	std::string s;
	for (const auto &[comp, c] : terms)
	{
		Scalar a = abs(c);
		std::string term = (a == 1 ? "" : to_string(a) + " ") + "e^" + comp.to_string();
		s += s.empty() ? (c < 0 ? "-" + term : term) : (c < 0 ? " - " : " + ") + term;
	}
	return s;
}

int cmd_mc(unsigned N, unsigned M, bool oracle, bool as_json, std::ostream &out)
{
	MCTable t = mc_coefficients(N, M);
	json j = header("mc");
	j["N"] = N;
	j["M"] = M;
	j["rows"] = json::array();
	std::vector<std::vector<std::string>> rows{{"s", "|s|", "l(s)", "M(s)", "c(s,M)"}};
	for (const auto &[s, c] : t.entries)
	{
		j["rows"].push_back({{"s", s.parts}, {"size", s.size()}, {"length", s.length()}, {"remaining", t.remaining(s)},
		                     {"c", coefficient_json(c)}});
		rows.push_back({s.to_string(), str(long(s.size())), str(long(s.length())), str(long(t.remaining(s))), str(c)});
	}
	j["assembled"] = json::object();
	for (const auto &[k, terms] : t.assembled)
	{
		json a = json::array();
		for (const auto &[s, c] : terms)
			a.push_back({{"s", s.parts}, {"c", coefficient_json(c)}});
		j["assembled"][std::to_string(k)] = a;
	}
	bool pass = true;
	std::optional<NCOracleReport> r;
	if (oracle)
	{
		r = nc_oracle(N, M);
		pass = r->equal();
		j["oracle"] = {{"verdict", pass ? "EQUAL" : "DIFFERENT"},
		               {"lhs", polynomial_json(r->lhs)},
		               {"rhs", polynomial_json(r->rhs)},
		               {"difference", polynomial_json(r->difference)},
		               {"unrestricted_equal", r->equal_without_restriction()}};
	}
	if (as_json)
	{
		out << j.dump(2) << "\n";
		return pass ? exit_pass : exit_fail;
	}
	out << "Maurer-Cartan coefficients, N = " << N << ", M = " << M << "\n";
	print_table(out, rows);
	for (const auto &[k, terms] : t.assembled)
		out << "  c_" << k << " = " << assembled_text(terms) << "\n";
	if (r)
	{
		out << "  (D + e)^" << M << " = " << r->lhs.to_string() << "\n";
		out << "  sum_k c_k D^k = " << r->rhs.to_string() << "\n";
		out << "oracle: " << (pass ? "EQUAL" : "DIFFERENT") << "\n";
		if (!pass)
			out << "  difference: " << r->difference.to_string() << "\n"
			    << "  without the restriction s_i < N: " << (r->equal_without_restriction() ? "EQUAL" : "DIFFERENT")
			    << "\n";
	}
	return pass ? exit_pass : exit_fail;
}

// trees

int cmd_trees(std::size_t leaves, std::optional<std::size_t> unary, std::optional<std::size_t> binary,
              std::optional<std::size_t> vertices, bool as_json, std::ostream &out)
{
	std::vector<PlanarTree> trees;
	if (vertices)
		trees = enumerate_arity(leaves, *vertices);
	else if (unary && binary)
		trees = enumerate_ub(leaves, *unary, *binary);
	else
		throw InputError("trees needs --unary and --binary, or --vertices");
	if (as_json)
	{
		json j = header("trees");
		j["leaves"] = leaves;
		j["count"] = trees.size();
		j["trees"] = json::array();
		for (const auto &t : trees)
			j["trees"].push_back(t.serialize());
		out << j.dump(2) << "\n";
	}
	else
	{
		out << trees.size() << " trees\n";
		for (const auto &t : trees)
			out << "  " << t.serialize() << "\n";
	}
	return exit_pass;
}

// operad

int cmd_operad(const std::string &kind, unsigned N, unsigned n_max, unsigned u_max, const std::string &style, bool as_json,
               std::ostream &out)
{
	json j = header("operad");
	j["kind"] = kind;
	j["N"] = N;
	j["rows"] = json::array();
	std::vector<std::vector<std::string>> rows;
	bool pass = true;
	if (kind == "ndga" || kind == "ndgla")
	{
		auto dims = kind == "ndga" ? ndga_dims(N, n_max) : ndgla_dims(N, n_max);
		rows.push_back({"n", "dim", "closed", "superdim", "closed superdim", "match"});
		for (const auto &r : dims)
		{
			j["rows"].push_back({{"n", r.n},
			                     {"dim", r.dim},
			                     {"closed_dim", r.closed_dim},
			                     {"superdim", r.superdim},
			                     {"closed_superdim", r.closed_superdim ? json(*r.closed_superdim) : json(nullptr)},
			                     {"matches", r.matches()}});
			rows.push_back({str(long(r.n)), str(r.dim), str(r.closed_dim), str(r.superdim),
			                r.closed_superdim ? str(*r.closed_superdim) : "-", yes_no(r.matches())});
			pass = pass && r.matches();
		}
	}
	else if (kind == "ass")
	{
		rows.push_back({"n", "free", "dim (unsigned)", "dim (weighted)", "closed", "binomial"});
		for (const auto &r : assN_dims(N, n_max))
		{
			j["rows"].push_back({{"n", r.n},
			                     {"free_dim", r.free_dim},
			                     {"rank_unsigned", r.rank_unsigned},
			                     {"dim_unsigned", r.dim_unsigned},
			                     {"rank_weighted", r.rank_weighted},
			                     {"dim_weighted", r.dim_weighted},
			                     {"closed_form", r.closed_form},
			                     {"binomial_formula", r.binomial_formula ? coefficient_json(*r.binomial_formula) : json(nullptr)}});
			rows.push_back({str(long(r.n)), str(r.free_dim), str(r.dim_unsigned), str(r.dim_weighted), str(r.closed_form),
			                r.binomial_formula ? str(*r.binomial_formula) : "-"});
			pass = pass && r.dim_weighted == r.closed_form;
		}
	}
	else if (kind == "dgass" || kind == "ndga-quotient")
	{
		std::vector<QuotientRow> q;
		if (kind == "dgass")
		{
			if (style != "weighted" && style != "unsigned")
				throw InputError("--style must be weighted or unsigned");
			q = dgass_dims(N, n_max, u_max, style == "weighted" ? RelationStyle::weighted : RelationStyle::unsigned_sum);
		}
		else
			q = ndga_quotient_dims(N, n_max, u_max);
		rows.push_back({"n", "d's", "free", "ideal", "quotient"});
		for (const auto &r : q)
		{
			j["rows"].push_back({{"n", r.n}, {"u", r.u}, {"free_dim", r.free_dim}, {"ideal_dim", r.ideal_dim},
			                     {"quotient_dim", r.quotient_dim()}});
			rows.push_back({str(long(r.n)), str(long(r.u)), str(r.free_dim), str(r.ideal_dim), str(r.quotient_dim())});
		}
	}
	else
		throw InputError("unknown operad kind '" + kind + "' (ndga, ndgla, ass, dgass, ndga-quotient)");
	j["pass"] = pass;
	if (as_json)
		out << j.dump(2) << "\n";
	else
	{
		out << "operad " << kind << ", N = " << N << "\n";
		print_table(out, rows);
	}
	return pass ? exit_pass : exit_fail;
}

// series

int cmd_series(const std::string &kind, unsigned N, unsigned order, bool as_json, std::ostream &out)
{
	SeriesReport r = series_check(parse_series_kind(kind), N, order);
	if (as_json)
	{
		json j = header("series");
		j["kind"] = to_string(r.kind);
		j["N"] = N;
		j["closed_form"] = r.closed_form;
		j["rows"] = json::array();
		for (const auto &row : r.rows)
			j["rows"].push_back({{"n", row.n},
			                     {"computed", coefficient_json(row.computed)},
			                     {"expected", coefficient_json(row.expected)},
			                     {"equal", row.equal()}});
		j["pass"] = r.pass();
		out << j.dump(2) << "\n";
	}
	else
	{
		out << "series " << to_string(r.kind) << ", N = " << N << ", against " << r.closed_form << "\n";
		std::vector<std::vector<std::string>> rows{{"n", "computed", "expected", "equal"}};
		for (const auto &row : r.rows)
			rows.push_back({str(long(row.n)), str(row.computed), str(row.expected), yes_no(row.equal())});
		print_table(out, rows);
		out << "verdict: " << pass_fail(r.pass()) << "\n";
	}
	return r.pass() ? exit_pass : exit_fail;
}

// endalg

int cmd_endalg(const std::string &file, unsigned N_opt, const std::string &output, bool as_json, std::ostream &out)
{
	InputDocument doc = load_document(file);
	unsigned N = N_opt ? N_opt : doc.algebra.declared_N;
	if (!doc.algebra.diff)
		throw InputError(file + ": endalg needs a differential m1");
	AlgebraPresentation end = end_dga(doc.algebra, N);
	SparseMatrix d = end.diff->matrix();
	const unsigned bound = 2 * N - 1;
	unsigned order = 0;
	SparseMatrix power = SparseMatrix::identity(d.rows());
	for (unsigned k = 1; k <= bound + 1 && !order; ++k)
	{
		power = power * d;
		if (power.is_zero())
			order = k;
	}
	bool vanishes = order && order <= bound;
	bool proper = order == bound;
	ValidationReport r = validate_ndga(end, bound);
	bool pass = vanishes && r.axioms_hold();
	if (!output.empty())
	{
		InputDocument e;
		e.algebra = end;
		std::ofstream f(output);
		if (!f)
			throw InputError("cannot write '" + output + "'");
		f << to_json(e).dump(2) << "\n";
	}
	if (as_json)
	{
		json j = header("endalg");
		j["file"] = file;
		j["N"] = N;
		j["dim"] = end.space.dim();
		j["bound"] = bound;
		j["nilpotency_order"] = order ? json(order) : json(nullptr);
		j["vanishes_at_bound"] = vanishes;
		j["proper"] = proper;
		j["report"] = report_json(r, end.space);
		j["pass"] = pass;
		out << j.dump(2) << "\n";
	}
	else
	{
		out << "endalg " << file << ": N = " << N << ", dim End(C) = " << end.space.dim() << "\n";
		out << "  d^" << bound << " = 0: " << yes_no(vanishes) << "\n";
		out << "  least k with d^k = 0: " << (order ? std::to_string(order) : "> " + std::to_string(bound + 1)) << "\n";
		out << "  d^" << bound - 1 << " != 0: " << yes_no(proper) << "\n";
		print_report(out, r, end.space);
		out << "verdict: " << pass_fail(pass) << "\n";
	}
	return pass ? exit_pass : exit_fail;
}

// audit

int cmd_audit(const std::string &output, bool as_json, std::ostream &out)
{
	auto findings = audit_findings();
	std::ofstream f(output);
	if (!f)
		throw InputError("cannot write '" + output + "'");
	f << findings_markdown(findings);
	if (as_json)
	{
		json j = header("audit");
		j["output"] = output;
		j["findings"] = findings_json(findings);
		out << j.dump(2) << "\n";
	}
	else
	{
		for (const auto &x : findings)
			out << "  " << x.title << ": " << x.verdict << "\n";
		out << findings.size() << " findings written to " << output << "\n";
	}
	return exit_pass;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
	CLI::App app{"Exact workbench for higher-depth algebras", "ndepth"};
	app.require_subcommand(1);
	app.fallthrough();
	bool as_json = false;
	app.add_flag("--json", as_json, "Machine-readable output");

	std::string file;
	unsigned N = 0, M = 0;

	auto *check = app.add_subcommand("check", "Validate an algebra against its declared kind");
	check->add_option("file", file, "Input document")->required();
	check->add_option("-N", N, "Override the declared N");
	bool strict = false, corestriction = false, both = false;
	auto *o_strict = check->add_flag("--strict", strict, "Exit code from the strict verdict");
	auto *o_cor = check->add_flag("--corestriction", corestriction, "Exit code from the corestriction identities");
	auto *o_both = check->add_flag("--both", both, "Report both, exit code from the corestriction identities");
	o_strict->excludes(o_cor)->excludes(o_both);
	o_cor->excludes(o_both);

	auto *cohomology = app.add_subcommand("cohomology", "Cohomology of an N-complex");
	cohomology->add_option("file", file, "Input document")->required();
	cohomology->add_option("-N", N, "Override the declared N");
	bool complex = false;
	cohomology->add_flag("--complex", complex, "Cohomology H_p = ker d^p / im d^{N-p} of m1")->required();

	DeformArgs deform_args;
	auto *deform = app.add_subcommand("deform", "Deformation cohomology H^2_{N,M} and checks");
	deform->add_option("file", deform_args.file, "Input document")->required();
	deform->add_option("-N", deform_args.N, "Nilpotency order (default: declared N)");
	deform->add_option("-M", deform_args.M, "Order of the deformation equation")->required();
	deform->add_option("--truncation", deform_args.truncation, "Carrier length (default: 2(M + 1) in degree 0, M + 1 otherwise)");
	deform->add_option("--k-max", deform_args.k_max, "Largest k in the telescoping check (default M + 1)");
	deform->add_flag("--search-proper", deform_args.search_proper, "Look for ker t_M outside ker t_{M-1} + im t_1");
	deform->add_option("--full", deform_args.full, "Check the document's deformation over k[h]/(h^p)")
	    ->check(CLI::Range(2u, 16u));

	auto *mc = app.add_subcommand("mc", "Maurer-Cartan coefficient table");
	mc->add_option("-N", N, "Nilpotency order")->required();
	mc->add_option("-M", M, "Power of delta + e")->required();
	bool oracle = false;
	mc->add_flag("--oracle", oracle, "Compare with the expansion in the free algebra on D, e");

	std::size_t leaves = 0;
	std::optional<std::size_t> unary, binary, vertices;
	auto *trees = app.add_subcommand("trees", "Enumerate planar rooted trees");
	trees->add_option("--leaves", leaves, "Number of leaves")->required();
	auto *o_u = trees->add_option("--unary", unary, "Unary vertices");
	auto *o_b = trees->add_option("--binary", binary, "Binary vertices");
	auto *o_v = trees->add_option("--vertices", vertices, "Internal vertices of any arity");
	o_v->excludes(o_u)->excludes(o_b);
	o_u->needs(o_b);
	o_b->needs(o_u);

	std::string kind;
	unsigned n_max = 0, u_max = 0, order = 0;
	std::string style = "weighted";
	auto *operad = app.add_subcommand("operad", "Dimensions of operad components");
	operad->add_option("kind", kind, "ndga, ndgla, ass, dgass or ndga-quotient")->required();
	operad->add_option("-N", N, "Depth")->required();
	operad->add_option("--max", n_max, "Largest arity")->required();
	operad->add_option("--u-max", u_max, "Largest number of d's (dgass, ndga-quotient; default N)");
	operad->add_option("--style", style, "dgass relations: weighted or unsigned");

	auto *series = app.add_subcommand("series", "Generating series against closed forms");
	series->add_option("kind", kind, "ndga, ndga-graded, ndgla or ndgla-graded")->required();
	series->add_option("-N", N, "Depth")->required();
	series->add_option("--order", order, "Highest coefficient")->required();

	std::string output;
	auto *endalg = app.add_subcommand("endalg", "End(C) of an N-complex as a (2N-1)-dga");
	endalg->add_option("file", file, "Input document")->required();
	endalg->add_option("-N", N, "Override the declared N");
	endalg->add_option("--output", output, "Write End(C) as an input document");

	std::string findings = "findings.md";
	auto *audit = app.add_subcommand("audit", "Recompute every discrepancy probe and write findings.md");
	audit->add_option("--output", findings, "Markdown destination");

	try
	{
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	}
	catch (const CLI::ParseError &e)
	{
		if (e.get_exit_code() == 0)
		{
			app.exit(e, out, err);
			return exit_pass;
		}
		auto first = std::find_if(args.begin(), args.end(), [](const std::string &a) { return a.rfind("-", 0) != 0; });
		auto subs = app.get_subcommands({});
		if (first != args.end() &&
		    std::none_of(subs.begin(), subs.end(), [&](const CLI::App *c) { return c->get_name() == *first; }))
			err << "error: unknown subcommand '" << *first << "'\n";
		else
			err << "error: " << e.what() << "\n";
		return exit_input;
	}

	try
	{
		if (check->parsed())
			return cmd_check(file, N, strict ? Verdict::strict : corestriction ? Verdict::corestriction : Verdict::both,
			                 as_json, out);
		if (cohomology->parsed())
			return cmd_cohomology(file, N, as_json, out);
		if (deform->parsed())
			return cmd_deform(deform_args, as_json, out);
		if (mc->parsed())
			return cmd_mc(N, M, oracle, as_json, out);
		if (trees->parsed())
			return cmd_trees(leaves, unary, binary, vertices, as_json, out);
		if (operad->parsed())
			return cmd_operad(kind, N, n_max, u_max ? u_max : N, style, as_json, out);
		if (series->parsed())
			return cmd_series(kind, N, order, as_json, out);
		if (endalg->parsed())
			return cmd_endalg(file, N, output, as_json, out);
		if (audit->parsed())
			return cmd_audit(findings, as_json, out);
	}
	catch (const InputError &e)
	{
		err << "input error: " << e.what() << "\n";
		return exit_input;
	}
	catch (const PreconditionError &e)
	{
		err << "precondition failed: " << e.what() << "\n";
		return exit_fail;
	}
	return exit_input;
}

} // namespace ndepth
