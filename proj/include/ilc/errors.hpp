#pragma once

#include <stdexcept>
#include <string>

namespace ilc {

/// Linear solve failed even after jitter escalation.
class IllConditionedError : public std::runtime_error {
public:
    IllConditionedError(const std::string& what, double condition_number)
        : std::runtime_error(what), condition_number(condition_number) {}
    double condition_number;
};

/// The model matrix lost row rank and no right-inverse exists.
class RankDeficiencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Kinematic target outside the arm workspace.
class UnreachableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gain certification failed at every in-band frequency.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ilc
