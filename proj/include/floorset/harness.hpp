#pragma once
// Grid scans of exact vs predicted quantities, error normalization,
// log-log exponent fits, and CSV/JSON emission.
//
// Output is deterministic: grid points may be evaluated in parallel but are
// reported in ascending x, and every floating-point value is rendered with
// shortest round-trip precision.

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "floorset/asym.hpp"
#include "floorset/blocks.hpp"
#include "floorset/exact.hpp"
#include "floorset/format.hpp"
#include "floorset/parallel.hpp"
#include "floorset/version.hpp"

namespace floorset {

enum class ScanQuantity { pi_S, S_prime, S_prime_power, S_lambda, cardinality, progression };
enum class NormalizerKind { sqrt_x, x_9_19, pnt_envelope, li_S_tail };

constexpr const char* scan_quantity_name(ScanQuantity q) {
    switch (q) {
        case ScanQuantity::pi_S:          return "pi-s";
        case ScanQuantity::S_prime:       return "s-prime";
        case ScanQuantity::S_prime_power: return "s-prime-power";
        case ScanQuantity::S_lambda:      return "s-lambda";
        case ScanQuantity::cardinality:   return "cardinality";
        case ScanQuantity::progression:   return "progression";
    }
    return "?";
}

constexpr const char* normalizer_name(NormalizerKind n) {
    switch (n) {
        case NormalizerKind::sqrt_x:       return "sqrt-x";
        case NormalizerKind::x_9_19:       return "x-9-19";
        case NormalizerKind::pnt_envelope: return "pnt-envelope";
        case NormalizerKind::li_S_tail:    return "lis-tail";
    }
    return "?";
}

struct ScanConfig {
    ScanQuantity quantity = ScanQuantity::pi_S;
    uint64_t x_from = 16;
    uint64_t x_to = 16;
    int points = 1;
    NormalizerKind normalizer = NormalizerKind::sqrt_x;
    double envelope_c = 1.0;     // pnt-envelope parameter
    uint64_t prog_q = 1;         // progression modulus / residue
    uint64_t prog_a = 1;
    double constant_tol = 1e-8;  // enclosure width for C_f predictions
    uint64_t sieve_limit = 0;    // 0: derived from constant_tol
    unsigned threads = 1;
};

struct ErrorRecord {
    uint64_t x = 0;
    double exact = 0.0;
    double predicted = 0.0;
    double delta = 0.0;       // exact - predicted
    double normalized = 0.0;  // delta / normalizer(x)
};

struct ScanResult {
    ScanConfig config;
    std::vector<ErrorRecord> records;
    std::optional<ConstantInterval> constant;  // the C_f used, when applicable
};

inline double evaluate_normalizer(NormalizerKind kind, double c, double x) {
    switch (kind) {
        case NormalizerKind::sqrt_x:       return std::sqrt(x);
        case NormalizerKind::x_9_19:       return std::pow(x, 9.0 / 19.0);
        case NormalizerKind::pnt_envelope: return pnt_envelope(x, c);
        case NormalizerKind::li_S_tail:    return std::sqrt(x) / (std::log(x) * std::log(x));
    }
    throw std::invalid_argument("unknown normalizer");
}

// Integer roundings of the geometric sequence from x_from to x_to,
// consecutive duplicates removed.
inline std::vector<uint64_t> scan_grid(uint64_t x_from, uint64_t x_to, int points) {
    std::vector<uint64_t> grid;
    if (points == 1) {
        grid.push_back(x_from);
        return grid;
    }
    double lo = std::log(static_cast<double>(x_from));
    double hi = std::log(static_cast<double>(x_to));
    for (int i = 0; i < points; ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        uint64_t x = static_cast<uint64_t>(std::llround(std::exp(t)));
        if (grid.empty() || grid.back() != x) grid.push_back(x);
    }
    return grid;
}

inline void validate(const ScanConfig& c) {
    if (c.x_from < 16) throw std::domain_error("scan: x_from must be >= 16");
    if (c.x_to < c.x_from) throw std::domain_error("scan: x_to must be >= x_from");
    if (c.x_to >= exact_max_x) throw std::domain_error("scan: x_to must be < 2^50");
    if (c.points < 1 || c.points > 10'000)
        throw std::domain_error("scan: points must lie in [1, 10^4]");
    if (c.points == 1 && c.x_from != c.x_to)
        throw std::domain_error("scan: a single-point scan needs x_from == x_to");
    if (c.quantity == ScanQuantity::progression &&
        (c.prog_q < 1 || c.prog_a < 1 || c.prog_a > c.prog_q))
        throw std::domain_error("scan: progression residue must satisfy 1 <= a <= q");
    if (!(c.constant_tol > 0.0)) throw std::domain_error("scan: constant tolerance must be > 0");
}

inline ScanResult scan(const ScanConfig& config) {
    validate(config);

    ScanResult result;
    result.config = config;

    // Predictions for S_f need the density constant C_f once per scan.
    double c_f = 0.0;
    WeightFn weight = WeightFn::one;
    bool needs_constant = false;
    switch (config.quantity) {
        case ScanQuantity::S_prime:       weight = WeightFn::prime; needs_constant = true; break;
        case ScanQuantity::S_prime_power: weight = WeightFn::prime_power; needs_constant = true; break;
        case ScanQuantity::S_lambda:      weight = WeightFn::lambda; needs_constant = true; break;
        default: break;
    }
    if (needs_constant) {
        uint64_t needed = constant_required_limit(weight, config.constant_tol);
        uint64_t limit = config.sieve_limit ? config.sieve_limit : needed;
        if (limit < needed)
            throw std::invalid_argument("scan: configured sieve limit " + std::to_string(limit) +
                                        " cannot reach the constant tolerance; need >= " +
                                        std::to_string(needed));
        PrimeTable table = sieve(limit, {.threads = config.threads});
        result.constant = density_constant(weight, config.constant_tol, table);
        c_f = result.constant->midpoint();
    }

    std::vector<uint64_t> grid = scan_grid(config.x_from, config.x_to, config.points);
    result.records.assign(grid.size(), {});

    parallel_for(0, grid.size(), config.threads, [&](uint64_t i) {
        uint64_t x = grid[i];
        double xd = static_cast<double>(x);
        ErrorRecord rec;
        rec.x = x;
        switch (config.quantity) {
            case ScanQuantity::pi_S:
                rec.exact = pi_S(x).value();
                rec.predicted = li_S(xd);
                break;
            case ScanQuantity::S_prime:
            case ScanQuantity::S_prime_power:
            case ScanQuantity::S_lambda:
                rec.exact = floor_sum(x, weight).value();
                rec.predicted = c_f * xd;
                break;
            case ScanQuantity::cardinality:
                rec.exact = static_cast<double>(cardinality(x));
                rec.predicted = 2.0 * std::sqrt(xd);
                break;
            case ScanQuantity::progression:
                rec.exact = static_cast<double>(count_in_progression(x, config.prog_q, config.prog_a));
                rec.predicted = 2.0 * std::sqrt(xd) / static_cast<double>(config.prog_q);
                break;
        }
        rec.delta = rec.exact - rec.predicted;
        rec.normalized = rec.delta / evaluate_normalizer(config.normalizer, config.envelope_c, xd);
        result.records[i] = rec;
    });
    return result;
}

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int used = 0;
    int excluded = 0;  // records with delta == 0 (log undefined)
};

struct insufficient_data : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Least-squares fit of log|delta| against log x.
inline ExponentFit fit_exponent(const std::vector<ErrorRecord>& records) {
    std::vector<double> xs, ys;
    int excluded = 0;
    for (const auto& r : records) {
        if (r.delta == 0.0) {
            ++excluded;
            continue;
        }
        xs.push_back(std::log(static_cast<double>(r.x)));
        ys.push_back(std::log(std::abs(r.delta)));
    }
    if (xs.size() < 3)
        throw insufficient_data("fit_exponent: need at least 3 records with delta != 0, have " +
                                std::to_string(xs.size()));

    size_t n = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw insufficient_data("fit_exponent: all x identical");

    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.used = static_cast<int>(n);
    fit.excluded = excluded;
    double ss_res = 0;
    for (size_t i = 0; i < n; ++i) {
        double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += e * e;
    }
    fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

// Columns are pinned: byte-identical output for identical configs.
inline void write_csv(const std::vector<ErrorRecord>& records, std::ostream& out) {
    out << "x,exact,predicted,delta,normalized\n";
    for (const auto& r : records) {
        out << format_uint(r.x) << ',' << format_double(r.exact) << ','
            << format_double(r.predicted) << ',' << format_double(r.delta) << ','
            << format_double(r.normalized) << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: output stream failed");
}

inline nlohmann::ordered_json to_json(const ScanResult& result) {
    const ScanConfig& c = result.config;
    nlohmann::ordered_json meta{
        {"quantity", scan_quantity_name(c.quantity)},
        {"x_from", c.x_from},
        {"x_to", c.x_to},
        {"points", c.points},
        {"spacing", "geometric"},
        {"normalizer", normalizer_name(c.normalizer)},
        {"version", version_string},
    };
    if (c.normalizer == NormalizerKind::pnt_envelope) meta["envelope_c"] = c.envelope_c;
    if (c.quantity == ScanQuantity::progression) {
        meta["q"] = c.prog_q;
        meta["a"] = c.prog_a;
    }
    if (result.constant) {
        meta["constant"] = nlohmann::ordered_json{
            {"weight", weight_name(result.constant->f)},
            {"lower", result.constant->lower},
            {"upper", result.constant->upper},
            {"cutoff", result.constant->cutoff},
        };
    }
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& r : result.records) {
        records.push_back(nlohmann::ordered_json{
            {"x", r.x},
            {"exact", r.exact},
            {"predicted", r.predicted},
            {"delta", r.delta},
            {"normalized", r.normalized},
        });
    }
    return nlohmann::ordered_json{{"meta", meta}, {"records", records}};
}

inline void write_json(const ScanResult& result, std::ostream& out) {
    out << to_json(result).dump(2) << '\n';
    if (!out) throw std::runtime_error("write_json: output stream failed");
}

// Reads records back from the CSV contract above (used by `fit`).
inline std::vector<ErrorRecord> read_csv(std::istream& in) {
    std::vector<ErrorRecord> records;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty input");
    if (line != "x,exact,predicted,delta,normalized")
        throw std::runtime_error("read_csv: unexpected header: " + line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ErrorRecord r;
        size_t pos = 0;
        auto next = [&](bool last) {
            size_t comma = last ? line.size() : line.find(',', pos);
            if (comma == std::string::npos) throw std::runtime_error("read_csv: malformed row: " + line);
            std::string field = line.substr(pos, comma - pos);
            pos = comma + 1;
            return field;
        };
        r.x = std::stoull(next(false));
        r.exact = std::stod(next(false));
        r.predicted = std::stod(next(false));
        r.delta = std::stod(next(false));
        r.normalized = std::stod(next(true));
        records.push_back(r);
    }
    return records;
}

} // namespace floorset
