#pragma once

// Named invariant suites, one per module. Each check reports a measured value
// against a tolerance; `info` rows are reported but never fail a suite.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "anglekit/matrix.hpp"

namespace anglekit {

enum class CheckStatus { pass, fail, info };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string suite;
    std::string invariant;
    CheckStatus status = CheckStatus::pass;
    double measured = 0.0;
    double tolerance = 0.0;
};

struct CheckOptions {
    int dim = 64;                         // halfcircle suite basis size
    BasisMode mode = BasisMode::cyclic;   // halfcircle suite basis mode
    std::uint64_t seed = 20240611;        // random matrices and index pairs
};

/// A suite aborted on a numerical error (NonConvergence, DomainError, ...).
class SuiteFailure : public std::runtime_error {
public:
    SuiteFailure(std::string suite, const std::string& what)
        : std::runtime_error(suite + ": " + what), suite_(std::move(suite)) {}
    const std::string& suite() const noexcept { return suite_; }

private:
    std::string suite_;
};

/// specfun, linalg, halfcircle, whquant, circlecs, moments.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name and SuiteFailure on numerical errors.
std::vector<CheckResult> run_suite(const std::string& name, const CheckOptions& opt = {});

/// All suites in suite_names() order; "all" accepted by run_suite as well.
std::vector<CheckResult> run_all(const CheckOptions& opt = {});

bool all_passed(const std::vector<CheckResult>& r);

}  // namespace anglekit
