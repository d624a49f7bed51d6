#pragma once

#include "ndepth/structures.hpp"
#include "ndepth/tensorcoalg.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ndepth {

inline constexpr int schema_version = 1;

/// An algebra description: basis with degrees, structure constants in the
/// unshifted convention, declared kind and N, carrier options, and optionally
/// the terms of a formal deformation.
struct InputDocument
{
	AlgebraPresentation algebra;
	std::size_t truncation = 0; // 0: each command picks its default
	CarrierMode mode = CarrierMode::full;
	/// terms[j] is the coefficient of h^{j+1}; each maps arity k to a map of degree 2 - k.
	std::vector<std::map<std::size_t, GradedMultiMap>> deformation;

	friend bool operator==(const InputDocument &a, const InputDocument &b);
};

/// Throws InputError with the JSON path of the offending field.
InputDocument parse_document(const nlohmann::json &j);
InputDocument load_document(const std::filesystem::path &path);
nlohmann::json to_json(const InputDocument &doc);

/// Exact rational from a JSON integer or a string "p", "-p/q".
Scalar parse_coefficient(const nlohmann::json &j, const std::string &path);
/// Integers as JSON numbers when they fit, everything else as "p/q" strings.
nlohmann::json coefficient_json(const Scalar &x);

/// [{"in": [...], "out": name, "coeff": ...}] in tuple order.
nlohmann::json entries_json(const GradedMultiMap &f);
nlohmann::json vector_json(const SparseVector &v, const GradedSpace &space);
std::vector<std::string> names_of(const Tuple &t, const GradedSpace &space);

} // namespace ndepth
