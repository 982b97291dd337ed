#pragma once

#include "trusty/check_result.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace trusty::cli {

// Verbs accepted inside batch files.
const std::vector<std::string>& batch_verbs();

// Runs one command; args exclude the program name. Returns the 0/1/2 exit
// code (VALID / INVALID / ERROR, ERROR dominating).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BatchOptions {
    unsigned jobs = 1;
    bool timing = false;
};

// Executes each non-blank, non-comment line as a command. Output is emitted
// in input order whatever the job count. Returns the maximum exit code.
int run_batch(std::string_view batch_text, const BatchOptions& options, std::ostream& out,
              std::ostream& err);

// STATUS \t EXPECTED \t COMPUTED-or-- \t SUBJECT
std::string format_result(const CheckResult& result, std::string_view subject);

// "256M", "64MiB", "1G", "1048576" -> bytes. Throws std::invalid_argument.
std::size_t parse_byte_size(std::string_view text);

}  // namespace trusty::cli
