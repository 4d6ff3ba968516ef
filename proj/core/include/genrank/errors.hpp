#pragma once

#include <stdexcept>
#include <string>

namespace genrank {

// Input matrix fails the Hermitian check beyond the scale-aware tolerance.
struct NonHermitianInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tuples combined entrywise must have equal length.
struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Complexification pairs up entries and needs an even count.
struct OddLength : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A singular value landed inside the undecidable band around the rank
// cut, so the closure dimension is not trustworthy at this tolerance.
struct ToleranceAmbiguity : std::runtime_error {
    double sigma;
    double tol;
    ToleranceAmbiguity(const std::string& msg, double sigma_, double tol_)
        : std::runtime_error(msg), sigma(sigma_), tol(tol_) {}
};

// The given span is not closed under products/adjoints, or lacks a unit.
struct NotAnAlgebra : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidSize : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Noncommutative targets cannot be generated from a single entry.
struct NeedTwoEntries : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Diagonal entries fail the disjoint/nonzero spectra requirement needed
// for bump-function recovery of matrix units.
struct SpectraNotSeparated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidOmega : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The closed-form complement dimension disagrees with the stratum scan.
struct FormulaMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A builder callback broke its movement or approximation budget.
struct ApproximatorContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejected algebra description; carries 1-based source position.
struct MalformedDescription : std::runtime_error {
    int line;
    int column;
    MalformedDescription(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg), line(line_), column(column_) {}
};

// Rejected tuple/field JSON input.
struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace genrank
