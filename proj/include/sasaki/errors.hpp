#pragma once

#include <stdexcept>
#include <string>

namespace sasaki {

// Base class for all numeric/domain failures raised by the library.
// The CLI maps these to exit code 3 with a machine-readable payload.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error("pole", what) {}
};

struct UnsupportedModel : Error {
    explicit UnsupportedModel(const std::string& what) : Error("unsupported_model", what) {}
};

struct VerticalAtZero : Error {
    explicit VerticalAtZero(const std::string& what) : Error("vertical_at_zero", what) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error("no_convergence", what) {}
};

struct OracleBudgetExceeded : Error {
    explicit OracleBudgetExceeded(const std::string& what) : Error("oracle_budget", what) {}
};

struct DegenerateHorizontal : Error {
    explicit DegenerateHorizontal(const std::string& what) : Error("degenerate_horizontal", what) {}
};

struct ConjugatePoint : Error {
    explicit ConjugatePoint(const std::string& what) : Error("conjugate_point", what) {}
};

struct CutLocusError : Error {
    explicit CutLocusError(const std::string& what) : Error("cut_locus", what) {}
};

struct DegeneratePair : Error {
    explicit DegeneratePair(const std::string& what) : Error("degenerate_pair", what) {}
};

struct FitFailure : Error {
    explicit FitFailure(const std::string& what) : Error("fit_failure", what) {}
};

struct BadInput : Error {
    explicit BadInput(const std::string& what) : Error("bad_input", what) {}
};

} // namespace sasaki
