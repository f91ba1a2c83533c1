#ifndef DSQFT_ERRORS_HPP
#define DSQFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dsqft {

// Invalid arguments: out-of-range parameters, mismatched sizes, malformed input.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class dimension_error : public domain_error {
public:
    using domain_error::domain_error;
};

// Failures of a numerical procedure on admissible input. The CLI maps these to exit code 3.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class pole_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class convergence_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class overflow_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

// Raised when a quantity that must be real carries a non-negligible imaginary part.
class non_real_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class geometry_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

} // namespace dsqft

#endif
