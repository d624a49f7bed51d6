#include "ndepth/io.hpp"

#include "ndepth/error.hpp"

#include <fstream>
#include <set>

namespace ndepth {

using nlohmann::json;

namespace {

void only_keys(const json &j, const std::string &path, std::initializer_list<const char *> allowed)
{
	if (!j.is_object())
		throw InputError(path + ": expected an object");
	std::set<std::string> ok(allowed.begin(), allowed.end());
	for (const auto &[k, v] : j.items())
		if (!ok.count(k))
			throw InputError(path + ": unknown field '" + k + "'");
}

const json &require(const json &j, const std::string &key, const std::string &path)
{
	if (!j.contains(key))
		throw InputError(path + ": missing field '" + key + "'");
	return j.at(key);
}

std::size_t natural(const json &j, const std::string &path)
{
	if (!j.is_number_integer() || j.get<long long>() < 0)
		throw InputError(path + ": expected a non-negative integer");
	return j.get<std::size_t>();
}

std::string text(const json &j, const std::string &path)
{
	if (!j.is_string())
		throw InputError(path + ": expected a string");
	return j.get<std::string>();
}

GradedSpace parse_space(const json &j)
{
	if (!j.is_array() || j.empty())
		throw InputError("space: expected a non-empty array of basis elements");
	std::vector<BasisElement> basis;
	std::set<std::string> seen;
	for (std::size_t i = 0; i < j.size(); ++i)
	{
		std::string path = "space[" + std::to_string(i) + "]";
		only_keys(j[i], path, {"name", "degree"});
		std::string name = text(require(j[i], "name", path), path + ".name");
		if (name.empty())
			throw InputError(path + ".name: empty basis name");
		if (!seen.insert(name).second)
			throw InputError(path + ".name: duplicate basis name '" + name + "'");
		const json &deg = require(j[i], "degree", path);
		if (!deg.is_number_integer())
			throw InputError(path + ".degree: expected an integer");
		basis.push_back({name, deg.get<int>()});
	}
	return GradedSpace(basis);
}

GradedMultiMap parse_map(const json &j, const GradedSpace &space, std::size_t arity, int degree, const std::string &path)
{
	if (!j.is_array())
		throw InputError(path + ": expected an array of structure constants");
	GradedMultiMap f(space, arity, space, degree);
	for (std::size_t i = 0; i < j.size(); ++i)
	{
		std::string at = path + "[" + std::to_string(i) + "]";
		only_keys(j[i], at, {"in", "out", "coeff"});
		const json &in = require(j[i], "in", at);
		if (!in.is_array() || in.size() != arity)
			throw InputError(at + ".in: expected " + std::to_string(arity) + " basis names");
		Tuple t;
		for (std::size_t k = 0; k < in.size(); ++k)
		{
			std::string name = text(in[k], at + ".in[" + std::to_string(k) + "]");
			auto idx = space.index_of(name);
			if (!idx)
				throw InputError(at + ".in[" + std::to_string(k) + "]: unknown basis name '" + name + "'");
			t.push_back(*idx);
		}
		std::string out = text(require(j[i], "out", at), at + ".out");
		auto o = space.index_of(out);
		if (!o)
			throw InputError(at + ".out: unknown basis name '" + out + "'");
		Scalar c = parse_coefficient(require(j[i], "coeff", at), at + ".coeff");
		try
		{
			f.add(t, *o, c);
		}
		catch (const InputError &e)
		{
			throw InputError(at + ": " + e.what());
		}
	}
	return f;
}

std::map<std::size_t, GradedMultiMap> parse_operations(const json &j, const GradedSpace &space, const std::string &path)
{
	only_keys(j, path, {"m1", "m2", "bracket", "mk"});
	std::map<std::size_t, GradedMultiMap> out;
	if (j.contains("m1"))
		out.emplace(1, parse_map(j["m1"], space, 1, 1, path + ".m1"));
	if (j.contains("m2"))
		out.emplace(2, parse_map(j["m2"], space, 2, 0, path + ".m2"));
	if (j.contains("mk"))
	{
		const json &mk = j["mk"];
		if (!mk.is_object())
			throw InputError(path + ".mk: expected an object keyed by arity");
		for (const auto &[key, v] : mk.items())
		{
			std::size_t k = 0;
			try
			{
				std::size_t used = 0;
				k = std::stoul(key, &used);
				if (used != key.size())
					k = 0;
			}
			catch (const std::exception &)
			{
			}
			if (k < 3)
				throw InputError(path + ".mk: key '" + key + "' must be an arity >= 3 (use m1 and m2 for 1 and 2)");
			out.emplace(k, parse_map(v, space, k, 2 - static_cast<int>(k), path + ".mk." + key));
		}
	}
	return out;
}

json operations_json(const std::map<std::size_t, GradedMultiMap> &ops)
{
	json j = json::object();
	for (const auto &[k, f] : ops)
	{
		if (k == 1)
			j["m1"] = entries_json(f);
		else if (k == 2)
			j["m2"] = entries_json(f);
		else
			j["mk"][std::to_string(k)] = entries_json(f);
	}
	return j;
}

} // namespace

bool operator==(const InputDocument &a, const InputDocument &b)
{
	const auto &x = a.algebra, &y = b.algebra;
	return x.space == y.space && x.mult == y.mult && x.diff == y.diff && x.bracket == y.bracket &&
	       x.higher == y.higher && x.declared_kind == y.declared_kind && x.declared_N == y.declared_N &&
	       a.truncation == b.truncation && a.mode == b.mode && a.deformation == b.deformation;
}

Scalar parse_coefficient(const json &j, const std::string &path)
{
	if (j.is_number_integer())
		return Scalar(mpz_class(j.dump(), 10));
	if (!j.is_string())
		throw InputError(path + ": expected an integer or a rational string such as \"1/3\"");
	try
	{
		return parse_scalar(j.get<std::string>());
	}
	catch (const InputError &e)
	{
		throw InputError(path + ": " + e.what());
	}
}

json coefficient_json(const Scalar &x)
{
	if (x.get_den() == 1 && x.get_num().fits_slong_p())
		return x.get_num().get_si();
	return to_string(x);
}

std::vector<std::string> names_of(const Tuple &t, const GradedSpace &space)
{
	std::vector<std::string> out;
	for (auto i : t)
		out.push_back(space.name(i));
	return out;
}

json entries_json(const GradedMultiMap &f)
{
	json out = json::array();
	for (const auto &[t, v] : f.entries())
		for (const auto &[o, c] : v)
			out.push_back({{"in", names_of(t, f.domain())}, {"out", f.codomain().name(o)}, {"coeff", coefficient_json(c)}});
	return out;
}

json vector_json(const SparseVector &v, const GradedSpace &space)
{
	json out = json::object();
	for (const auto &[i, c] : v)
		out[space.name(i)] = coefficient_json(c);
	return out;
}

InputDocument parse_document(const json &j)
{
	only_keys(j, "document", {"schema_version", "field", "space", "declared", "options", "operations", "deformation"});
	if (j.contains("schema_version") && j["schema_version"] != schema_version)
		throw InputError("schema_version: unsupported version " + j["schema_version"].dump());
	if (j.contains("field") && j["field"] != "rational")
		throw InputError("field: only \"rational\" is supported");

	InputDocument doc;
	AlgebraPresentation &a = doc.algebra;
	a.space = parse_space(require(j, "space", "document"));

	const json &declared = require(j, "declared", "document");
	only_keys(declared, "declared", {"kind", "N"});
	a.declared_kind = parse_kind(text(require(declared, "kind", "declared"), "declared.kind"));
	a.declared_N = static_cast<unsigned>(natural(require(declared, "N", "declared"), "declared.N"));

	if (j.contains("options"))
	{
		const json &o = j["options"];
		only_keys(o, "options", {"truncation", "mode"});
		if (o.contains("truncation"))
			doc.truncation = natural(o["truncation"], "options.truncation");
		if (o.contains("mode"))
		{
			std::string m = text(o["mode"], "options.mode");
			if (m == "full")
				doc.mode = CarrierMode::full;
			else if (m == "two_truncated")
				doc.mode = CarrierMode::two_truncated;
			else
				throw InputError("options.mode: expected \"full\" or \"two_truncated\", got '" + m + "'");
		}
	}

	const json &ops = require(j, "operations", "document");
	auto parsed = parse_operations(ops, a.space, "operations");
	if (ops.contains("bracket"))
		a.bracket = parse_map(ops["bracket"], a.space, 2, 0, "operations.bracket");
	for (auto &[k, f] : parsed)
	{
		if (k == 1)
			a.diff = f;
		else if (k == 2)
			a.mult = f;
		else
			a.higher.emplace(k, f);
	}

	if (j.contains("deformation"))
	{
		const json &d = j["deformation"];
		only_keys(d, "deformation", {"terms"});
		const json &terms = require(d, "terms", "deformation");
		if (!terms.is_array())
			throw InputError("deformation.terms: expected an array (entry j is the coefficient of h^(j+1))");
		for (std::size_t i = 0; i < terms.size(); ++i)
		{
			std::string path = "deformation.terms[" + std::to_string(i) + "]";
			if (terms[i].contains("bracket"))
				throw InputError(path + ": deformation terms take m1, m2 and mk only");
			doc.deformation.push_back(parse_operations(terms[i], a.space, path));
		}
	}

	a.check_signature();
	return doc;
}

InputDocument load_document(const std::filesystem::path &path)
{
	std::ifstream in(path);
	if (!in)
		throw InputError("cannot open '" + path.string() + "'");
	json j;
	try
	{
		j = json::parse(in);
	}
	catch (const json::parse_error &e)
	{
		throw InputError(path.string() + ": malformed JSON: " + e.what());
	}
	return parse_document(j);
}

json to_json(const InputDocument &doc)
{
	const AlgebraPresentation &a = doc.algebra;
	json j;
	j["schema_version"] = schema_version;
	j["field"] = "rational";
	j["space"] = json::array();
	for (const auto &b : a.space.basis())
		j["space"].push_back({{"name", b.name}, {"degree", b.degree}});
	j["declared"] = {{"kind", to_string(a.declared_kind)}, {"N", a.declared_N}};
	json options = json::object();
	if (doc.truncation)
		options["truncation"] = doc.truncation;
	if (doc.mode == CarrierMode::two_truncated)
		options["mode"] = "two_truncated";
	if (!options.empty())
		j["options"] = options;

	std::map<std::size_t, GradedMultiMap> ops = a.higher;
	if (a.diff)
		ops.emplace(1, *a.diff);
	if (a.mult)
		ops.emplace(2, *a.mult);
	j["operations"] = operations_json(ops);
	if (a.bracket)
		j["operations"]["bracket"] = entries_json(*a.bracket);
	if (!doc.deformation.empty())
	{
		j["deformation"]["terms"] = json::array();
		for (const auto &t : doc.deformation)
			j["deformation"]["terms"].push_back(operations_json(t));
	}
	return j;
}

} // namespace ndepth
