#pragma once

#include <stdexcept>
#include <string>

namespace omt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed word/permutation/JSON input.
struct ParseError : Error {
    using Error::Error;
};

// An exact search or enumeration would exceed its configured budget.
struct BudgetError : Error {
    using Error::Error;
};

// Rejected twins certificate; `kind` tells which precondition failed.
struct VerifyError : Error {
    enum class Kind {
        index_range,
        overlap,
        size_mismatch,
        not_isomorphic,
    };

    VerifyError(Kind k, const std::string& msg) : Error(msg), kind(k) {}

    Kind kind;
};

} // namespace omt
