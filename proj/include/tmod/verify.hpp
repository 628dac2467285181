#pragma once

#include <string>
#include <vector>

#include "tmod/intmath.hpp"

namespace tmod {

struct VerifyResult {
    std::string name;
    bool pass = false;
    i64 checked = 0;
    std::vector<std::string> counterexamples;  // capped
    std::string note;
};

std::vector<std::string> verify_suite_names();

// run one registered suite; bound = 0 picks the suite's default
VerifyResult verify_suite(const std::string& name, i64 bound = 0);

}  // namespace tmod
