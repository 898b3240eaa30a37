#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "circjoin/cli/document.hpp"
#include "circjoin/join.hpp"

namespace circjoin::cli {

/// The dense residual check of a spectrum failed.
class VerificationError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

struct SpectrumOptions {
    bool eigenvectors = false;
    bool verify = false;
    /// Residual bound is residual_tol * (1 + ||A||_inf).
    double residual_tol = 1e-8;
    std::size_t dense_cap = kDefaultDenseCap;
    SpectralOptions spectral;
};

struct Verification {
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = true;
    /// Description of the chain vector with the largest residual.
    std::string worst;
};

struct SpectrumReport {
    std::vector<std::string> labels;
    SpectralDecomposition spectrum;
    std::vector<Complex> reduced_char_poly;
    std::optional<Verification> verification;
    bool include_eigenvectors = false;
};

/// Largest chain residual of `spectrum` against the dense expansion of `join`.
Verification verify_spectrum(const JoinSpec& join, const SpectralDecomposition& spectrum, double residual_tol,
                             std::size_t dense_cap = kDefaultDenseCap);

/// Runs full_spectrum (and the dense check when requested). Throws
/// VerificationError when the check fails.
SpectrumReport make_spectrum_report(const JoinDocument& document, const SpectrumOptions& options);

std::string render_json(const SpectrumReport& report);
/// One row per eigenvalue: eigenvalue,multiplicity,origin.
std::string render_csv(const SpectrumReport& report);

/// "condensed" or "block:<1-based index>".
std::string origin_label(const Origin& origin);

} // namespace circjoin::cli
