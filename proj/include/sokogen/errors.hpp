#pragma once

#include <stdexcept>
#include <string>

namespace sokogen {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct CountMismatch : ParseError {
    explicit CountMismatch(const std::string& what) : ParseError(what) {}
};

struct NoMan : ParseError {
    explicit NoMan(const std::string& what) : ParseError(what) {}
};

struct MultipleMen : ParseError {
    explicit MultipleMen(const std::string& what) : ParseError(what) {}
};

struct NoFreeCell : std::runtime_error {
    explicit NoFreeCell(const std::string& what) : std::runtime_error(what) {}
};

struct NotApplicable : std::logic_error {
    explicit NotApplicable(const std::string& what) : std::logic_error(what) {}
};

struct InvalidK : std::invalid_argument {
    explicit InvalidK(const std::string& what) : std::invalid_argument(what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyGoalSet : std::runtime_error {
    explicit EmptyGoalSet(const std::string& what) : std::runtime_error(what) {}
};

struct ArityMismatch : std::logic_error {
    explicit ArityMismatch(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sokogen
