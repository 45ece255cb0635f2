#pragma once

#include <stdexcept>
#include <string>

namespace qf {

// Bad arguments from the caller: wrong shapes, zero where nonzero is
// required, composite p, ranks outside a method's scope.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// vp(0) and friends: zero has no finite p-adic order.
struct zero_input_error : input_error {
    zero_input_error() : input_error("zero has no finite p-adic order") {}
};

struct not_prime_error : input_error {
    explicit not_prime_error(long long p)
        : input_error("not a prime: " + std::to_string(p)) {}
};

// A Gram matrix that fails the positive-definiteness test.
struct definiteness_error : input_error {
    using input_error::input_error;
};

// Singular basis-change matrix for a sublattice.
struct degenerate_error : input_error {
    using input_error::input_error;
};

// Operation outside the supported rank / scale regime.
struct unsupported_error : input_error {
    using input_error::input_error;
};

struct parse_error : input_error {
    using input_error::input_error;
};

// An executable consequence of the theory failed to hold.  These checks are
// assertions of proved statements; seeing one means a bug, not bad input.
struct theorem_violation : std::logic_error {
    using std::logic_error::logic_error;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace qf
