#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tanplane/kernel.hpp"

namespace tanplane {

struct VerifyRecord {
    std::string suite;
    std::string property;
    int samples = 0;
    double worst_deviation = 0.0;
    bool pass = false;
};

const std::vector<std::string>& verify_suites();

// Runs one named suite (or "all"); throws std::invalid_argument for unknown names.
std::vector<VerifyRecord> run_verify(const std::string& suite, int samples, std::uint64_t seed, int threads = 0);

std::string to_json_line(const VerifyRecord& record, std::uint64_t seed);

// "re,im" or "re"
Complex parse_complex(const std::string& text);
// "a..b"
std::pair<double, double> parse_range(const std::string& text);
// "WxH" or "N" (square)
std::pair<int, int> parse_dims(const std::string& text);

// Entry point of the command-line tool. 0 ok, 1 validation error, 2 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tanplane
