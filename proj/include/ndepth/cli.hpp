#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace ndepth {

/// Exit codes of `run`.
enum ExitCode
{
	exit_pass = 0,
	exit_fail = 1,  // valid run, a verified property does not hold
	exit_input = 2  // malformed command line or input document
};

/// Runs one `ndepth` command; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

struct Finding
{
	std::string title;
	std::string question;              // what was probed
	std::vector<std::string> evidence; // machine-checked facts, one per line
	std::string verdict;
};

/// Every discrepancy probe, recomputed from scratch.
std::vector<Finding> audit_findings();
std::string findings_markdown(const std::vector<Finding> &findings);
nlohmann::json findings_json(const std::vector<Finding> &findings);

} // namespace ndepth
