#include "circjoin/cli/document.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include <json.hpp>

namespace circjoin::cli {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column, std::string path)
    : Error(message), line_(line), column_(column), path_(std::move(path)) {}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column), line,
                         column);
    }
}

[[noreturn]] void structural(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what, 0, 0, path);
}

Complex parse_entry(const json& value, const std::string& path) {
    if (value.is_number()) return {value.get<double>(), 0.0};
    if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        return {value[0].get<double>(), value[1].get<double>()};
    }
    structural(path, "expected a real number or an [re, im] pair");
}

double clean_zero(double v) { return v == 0.0 ? 0.0 : v; }

ordered_json real_json(double v) {
    v = clean_zero(v);
    if (std::isfinite(v) && std::trunc(v) == v && std::abs(v) < 9007199254740992.0) {
        return static_cast<long long>(v);
    }
    return v;
}

ordered_json entry_json(Complex c) {
    if (c.imag() == 0.0) return real_json(c.real());
    return ordered_json::array({real_json(c.real()), real_json(c.imag())});
}

} // namespace

JoinDocument parse_document(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) structural("/", "document must be an object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "blocks" && key != "couplings" && key != "labels") structural("/" + key, "unknown key");
    }
    if (!doc.contains("blocks")) structural("/blocks", "missing");
    const json& blocks_json = doc["blocks"];
    if (!blocks_json.is_array() || blocks_json.empty()) structural("/blocks", "expected a non-empty array");

    std::vector<CirculantMatrix> blocks;
    for (std::size_t i = 0; i < blocks_json.size(); ++i) {
        const std::string path = "/blocks/" + std::to_string(i);
        const json& b = blocks_json[i];
        if (!b.is_array() || b.empty()) structural(path, "expected a non-empty array of entries");
        std::vector<Complex> coefficients;
        for (std::size_t r = 0; r < b.size(); ++r) coefficients.push_back(parse_entry(b[r], path + "/" + std::to_string(r)));
        blocks.emplace_back(std::move(coefficients));
    }

    const auto d = static_cast<Eigen::Index>(blocks.size());
    CMatrix couplings = CMatrix::Zero(d, d);
    if (doc.contains("couplings")) {
        const json& table = doc["couplings"];
        if (!table.is_array() || table.size() != blocks.size()) {
            structural("/couplings", "expected " + std::to_string(d) + " rows");
        }
        for (std::size_t i = 0; i < table.size(); ++i) {
            const std::string path = "/couplings/" + std::to_string(i);
            if (!table[i].is_array() || table[i].size() != blocks.size()) {
                structural(path, "ragged coupling table: expected " + std::to_string(d) + " entries");
            }
            for (std::size_t j = 0; j < table[i].size(); ++j) {
                couplings(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    parse_entry(table[i][j], path + "/" + std::to_string(j));
            }
        }
    } else if (d > 1) {
        structural("/couplings", "missing (required for more than one block)");
    }

    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        const json& l = doc["labels"];
        if (!l.is_array() || l.size() != blocks.size()) {
            structural("/labels", "expected one label per block");
        }
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (!l[i].is_string()) structural("/labels/" + std::to_string(i), "expected a string");
            labels.push_back(l[i].get<std::string>());
        }
    }
    return {JoinSpec(std::move(blocks), std::move(couplings)), std::move(labels)};
}

std::string emit_document(const JoinDocument& document) {
    const auto& spec = document.spec;
    ordered_json out;
    ordered_json blocks = ordered_json::array();
    for (const auto& b : spec.blocks()) {
        ordered_json row = ordered_json::array();
        for (const auto& c : b.defining_vector()) row.push_back(entry_json(c));
        blocks.push_back(std::move(row));
    }
    out["blocks"] = std::move(blocks);
    ordered_json table = ordered_json::array();
    for (std::size_t i = 0; i < spec.block_count(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < spec.block_count(); ++j) row.push_back(entry_json(spec.coupling(i, j)));
        table.push_back(std::move(row));
    }
    out["couplings"] = std::move(table);
    if (!document.labels.empty()) out["labels"] = document.labels;
    return out.dump(2) + "\n";
}

std::vector<double> parse_phase_state(std::string_view text) {
    const json doc = parse_json(text);
    const json* values = &doc;
    if (doc.is_object()) {
        if (!doc.contains("theta")) structural("/theta", "missing");
        values = &doc["theta"];
    }
    if (!values->is_array()) structural("/theta", "expected an array of phases");
    std::vector<double> theta;
    for (std::size_t i = 0; i < values->size(); ++i) {
        if (!(*values)[i].is_number()) structural("/theta/" + std::to_string(i), "expected a real number");
        theta.push_back((*values)[i].get<double>());
    }
    return theta;
}

std::string format_real(double value) {
    value = clean_zero(value);
    char buffer[64];
    const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
    return std::string(buffer, res.ptr);
}

std::string format_complex(Complex value) {
    const double re = clean_zero(value.real());
    const double im = clean_zero(value.imag());
    char buffer[64];
    auto r = std::to_chars(buffer, buffer + sizeof(buffer), re, std::chars_format::general, 17);
    std::string out(buffer, r.ptr);
    out += std::signbit(im) ? '-' : '+';
    auto i = std::to_chars(buffer, buffer + sizeof(buffer), std::abs(im), std::chars_format::general, 17);
    out.append(buffer, i.ptr);
    out += 'i';
    return out;
}

} // namespace circjoin::cli
