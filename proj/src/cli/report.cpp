#include "circjoin/cli/report.hpp"

#include <sstream>

#include <json.hpp>

namespace circjoin::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

double clean(double v) { return v == 0.0 ? 0.0 : v; }

ordered_json complex_json(Complex c) { return ordered_json::array({clean(c.real()), clean(c.imag())}); }

} // namespace

std::string origin_label(const Origin& origin) {
    return origin.condensed() ? "condensed" : "block:" + std::to_string(*origin.block + 1);
}

Verification verify_spectrum(const JoinSpec& join, const SpectralDecomposition& spectrum, double residual_tol,
                             std::size_t dense_cap) {
    const CMatrix a = expand_join_dense(join, dense_cap);
    const Eigen::Index n = a.rows();
    Verification v;
    v.tolerance = residual_tol * (1.0 + inf_norm(a));
    for (const auto& chain : spectrum.chains()) {
        const CMatrix shifted = a - chain.eigenvalue * CMatrix::Identity(n, n);
        for (std::size_t r = 0; r < chain.vectors.size(); ++r) {
            CVector res = shifted * chain.vectors[r];
            if (r > 0) res -= chain.vectors[r - 1];
            const double norm = res.cwiseAbs().maxCoeff();
            if (norm > v.max_residual || v.worst.empty()) {
                v.max_residual = std::max(v.max_residual, norm);
                v.worst = "eigenvalue " + format_complex(chain.eigenvalue) + " (" + origin_label(chain.origin) +
                          "), chain position " + std::to_string(r + 1);
            }
        }
    }
    v.passed = v.max_residual <= v.tolerance;
    return v;
}

SpectrumReport make_spectrum_report(const JoinDocument& document, const SpectrumOptions& options) {
    SpectrumReport report;
    report.labels = document.labels;
    report.spectrum = full_spectrum(document.spec, options.spectral);
    report.reduced_char_poly = characteristic_polynomial(report.spectrum.condensed);
    report.include_eigenvectors = options.eigenvectors;
    if (options.verify) {
        report.verification = verify_spectrum(document.spec, report.spectrum, options.residual_tol, options.dense_cap);
        if (!report.verification->passed) {
            std::ostringstream msg;
            msg << "verification failed: residual " << format_real(report.verification->max_residual)
                << " exceeds " << format_real(report.verification->tolerance) << " at "
                << report.verification->worst;
            throw VerificationError(msg.str());
        }
    }
    return report;
}

std::string render_json(const SpectrumReport& report) {
    const auto& s = report.spectrum;
    ordered_json out;
    out["dimension"] = s.dimension();
    out["block_sizes"] = s.block_sizes;
    if (!report.labels.empty()) out["labels"] = report.labels;
    out["diagonalizable"] = s.diagonalizable;
    ordered_json values = ordered_json::array();
    for (const auto& e : s.eigenvalues()) {
        ordered_json item;
        item["re"] = clean(e.value.real());
        item["im"] = clean(e.value.imag());
        item["multiplicity"] = e.multiplicity;
        item["origin"] = origin_label(e.origin);
        if (!e.origin.condensed() && !report.labels.empty()) item["label"] = report.labels[*e.origin.block];
        values.push_back(std::move(item));
    }
    out["eigenvalues"] = std::move(values);
    ordered_json poly = ordered_json::array();
    for (const auto& c : report.reduced_char_poly) poly.push_back(complex_json(c));
    out["reduced_char_poly"] = std::move(poly);
    if (report.include_eigenvectors) {
        ordered_json chains = ordered_json::array();
        for (const auto& chain : s.chains()) {
            ordered_json item;
            item["eigenvalue"] = complex_json(chain.eigenvalue);
            item["origin"] = origin_label(chain.origin);
            ordered_json vectors = ordered_json::array();
            for (const auto& v : chain.vectors) {
                ordered_json entries = ordered_json::array();
                for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(complex_json(v(i)));
                vectors.push_back(std::move(entries));
            }
            item["chain"] = std::move(vectors);
            chains.push_back(std::move(item));
        }
        out["eigenvectors"] = std::move(chains);
    }
    if (report.verification) {
        ordered_json v;
        v["max_residual"] = report.verification->max_residual;
        v["tolerance"] = report.verification->tolerance;
        v["passed"] = report.verification->passed;
        out["verification"] = std::move(v);
    }
    return out.dump(2) + "\n";
}

std::string render_csv(const SpectrumReport& report) {
    std::string out = "eigenvalue,multiplicity,origin\n";
    for (const auto& e : report.spectrum.eigenvalues()) {
        out += format_complex(e.value) + "," + std::to_string(e.multiplicity) + "," + origin_label(e.origin) + "\n";
    }
    return out;
}

} // namespace circjoin::cli
