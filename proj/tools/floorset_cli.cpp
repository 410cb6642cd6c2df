// floorset: prime statistics of the floor function set S(x) = {[x/n]}.
// Every subcommand is a thin adapter over the library; all numeric output
// uses shortest round-trip precision. Exit codes: 0 success, 2 usage error,
// 1 runtime error.

#include <charconv>
#include <cinttypes>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floorset/floorset.hpp"

namespace {

using namespace floorset;

// Accepts integers, decimals and scientific notation; real values are
// floored (S(x) depends only on [x]) with a note on stderr.
uint64_t parse_x_arg(const std::string& text) {
    uint64_t as_int = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), as_int);
    if (ec == std::errc() && ptr == text.data() + text.size()) return as_int;

    size_t consumed = 0;
    long double value;
    try {
        value = std::stold(text, &consumed);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--x", "not a number: " + text);
    }
    if (consumed != text.size() || !(value >= 1.0L) || value >= 0x1p63L)
        throw CLI::ValidationError("--x", "x must be a number in [1, 2^63): " + text);
    auto floored = static_cast<uint64_t>(value);
    if (static_cast<long double>(floored) != value)
        std::cerr << "note: x = " << text << " floored to " << floored << "\n";
    return floored;
}

WeightFn parse_weight(const std::string& name) {
    if (name == "prime") return WeightFn::prime;
    if (name == "prime-power") return WeightFn::prime_power;
    if (name == "lambda") return WeightFn::lambda;
    if (name == "one") return WeightFn::one;
    throw CLI::ValidationError("--f", "expected prime|prime-power|lambda|one");
}

PsiWeight parse_psi_weight(const std::string& name) {
    if (name == "lambda") return PsiWeight::lambda;
    if (name == "logp") return PsiWeight::log_prime;
    if (name == "prime") return PsiWeight::prime;
    if (name == "prime-power") return PsiWeight::prime_power;
    throw CLI::ValidationError("--weight", "expected lambda|logp|prime|prime-power");
}

ScanQuantity parse_scan_quantity(const std::string& name) {
    if (name == "pi-s") return ScanQuantity::pi_S;
    if (name == "s-prime") return ScanQuantity::S_prime;
    if (name == "s-prime-power") return ScanQuantity::S_prime_power;
    if (name == "s-lambda") return ScanQuantity::S_lambda;
    if (name == "cardinality") return ScanQuantity::cardinality;
    if (name == "progression") return ScanQuantity::progression;
    throw CLI::ValidationError("--quantity",
                               "expected pi-s|s-prime|s-prime-power|s-lambda|cardinality|progression");
}

NormalizerKind parse_normalizer(const std::string& name) {
    if (name == "sqrt-x") return NormalizerKind::sqrt_x;
    if (name == "x-9-19") return NormalizerKind::x_9_19;
    if (name == "pnt-envelope") return NormalizerKind::pnt_envelope;
    if (name == "lis-tail") return NormalizerKind::li_S_tail;
    throw CLI::ValidationError("--normalizer", "expected sqrt-x|x-9-19|pnt-envelope|lis-tail");
}

void print_psi_result(const PsiSumResult& r) {
    std::cout << format_double(r.value) << ' ' << format_uint(r.term_count) << ' '
              << format_double(r.envelope) << ' ' << format_double(r.ratio) << "\n";
}

// Compares the block method against the literal O(x) loop for every x up to
// max_x (and optionally `random` draws up to random_max). Returns the number
// of mismatching x.
uint64_t run_verify(uint64_t max_x, uint64_t random_count, uint64_t random_max, uint64_t seed,
                    unsigned threads) {
    const std::vector<std::pair<uint64_t, uint64_t>> pairs{{2, 1}, {3, 2}, {5, 5}};

    std::vector<uint64_t> xs;
    for (uint64_t x = 1; x <= max_x; ++x) xs.push_back(x);
    if (random_count > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<uint64_t> dist(max_x + 1, random_max);
        for (uint64_t i = 0; i < random_count; ++i) xs.push_back(dist(rng));
    }

    std::vector<uint8_t> bad(xs.size(), 0);
    parallel_for(0, xs.size(), threads, [&](uint64_t i) {
        uint64_t x = xs[i];
        BruteStats brute = brute_stats(x, pairs);
        bool ok = pi_S(x).count == brute.pi_S &&
                  floor_sum(x, WeightFn::prime).count == brute.s_prime &&
                  floor_sum(x, WeightFn::prime_power).count == brute.s_prime_power &&
                  floor_sum(x, WeightFn::one).count == brute.s_one &&
                  cardinality(x) == brute.cardinality;
        auto lam = floor_sum(x, WeightFn::lambda);
        ok = ok && std::abs(lam.real_value - brute.s_lambda) <=
                       lam.error_bound + brute.s_lambda_error_bound + 1e-12;
        for (size_t k = 0; k < pairs.size(); ++k)
            ok = ok && count_in_progression(x, pairs[k].first, pairs[k].second) == brute.progression[k];
        bad[i] = ok ? 0 : 1;
    });

    uint64_t failures = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (bad[i]) {
            ++failures;
            std::cerr << "mismatch at x = " << xs[i] << "\n";
        }
    }
    std::cout << "verified " << xs.size() << " values of x (exhaustive to " << max_x;
    if (random_count) std::cout << ", " << random_count << " random to " << random_max;
    std::cout << "): " << (failures ? "FAIL" : "OK") << "\n";
    return failures;
}

int run(int argc, char** argv) {
    CLI::App app{"prime statistics of the floor function set S(x) = {[x/n] : 1 <= n <= x}"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = hardware_threads();
    app.add_option("--threads", threads, "worker thread cap (results are thread-count independent)")
        ->check(CLI::Range(1u, 1024u));

    std::string x_text, f_name = "prime", weight_name = "lambda";
    uint64_t q = 1, a = 1;
    int delta = 0;

    auto* cmd_pi_s = app.add_subcommand("pi-s", "number of primes in S(x)");
    cmd_pi_s->add_option("--x", x_text)->required();

    auto* cmd_s_count = app.add_subcommand("s-count", "S_f(x) = sum_{n<=x} f([x/n])");
    cmd_s_count->add_option("--x", x_text)->required();
    cmd_s_count->add_option("--f", f_name, "prime|prime-power|lambda|one")->required();

    auto* cmd_card = app.add_subcommand("cardinality", "|S(x)|");
    cmd_card->add_option("--x", x_text)->required();

    auto* cmd_prog = app.add_subcommand("progression", "#{m in S(x) : m = a (mod q)}");
    cmd_prog->add_option("--x", x_text)->required();
    cmd_prog->add_option("--q", q)->required();
    cmd_prog->add_option("--a", a, "residue in [1, q]; a = q means 0 mod q")->required();

    double real_x = 0;
    auto* cmd_li = app.add_subcommand("li", "int_2^x dt/log t");
    cmd_li->add_option("--x", real_x)->required();

    auto* cmd_lis = app.add_subcommand("lis", "li_S(x), the two-integral main term for pi_S");
    cmd_lis->add_option("--x", real_x)->required();

    int n_terms = 1;
    auto* cmd_coeffs = app.add_subcommand("coeffs", "a_1..a_N of the li_S expansion");
    cmd_coeffs->add_option("--n", n_terms)->required()->check(CLI::Range(1, 12));

    double tol = 1e-8;
    auto* cmd_const = app.add_subcommand("constants", "enclosure of C_f = sum f(d)/(d(d+1))");
    cmd_const->add_option("--f", f_name, "prime|prime-power|lambda")->required();
    cmd_const->add_option("--tol", tol, "enclosure width")->required();

    uint64_t d_lo = 0, d_hi = 0;
    auto* cmd_psisum = app.add_subcommand("psisum", "sum_{D<d<=D'} w(d) psi(x/(d+delta))");
    cmd_psisum->add_option("--x", x_text)->required();
    cmd_psisum->add_option("--d-lo", d_lo)->required();
    cmd_psisum->add_option("--d-hi", d_hi)->required();
    cmd_psisum->add_option("--delta", delta)->required()->check(CLI::Range(0, 1));
    cmd_psisum->add_option("--weight", weight_name, "lambda|logp|prime|prime-power")->required();

    uint64_t n_param = 0;
    auto* cmd_rem = app.add_subcommand("remainder", "sum_{N<d<=x/N} f(d) psi(x/(d+delta))");
    cmd_rem->add_option("--x", x_text)->required();
    cmd_rem->add_option("--n-param", n_param, "N in [x^(1/3), sqrt x]")->required();
    cmd_rem->add_option("--delta", delta)->required()->check(CLI::Range(0, 1));
    cmd_rem->add_option("--f", weight_name, "prime|prime-power|lambda|logp")->required();

    std::string quantity_name = "pi-s", normalizer = "sqrt-x", format = "csv", out_path = "-";
    std::string from_text, to_text;
    int points = 2;
    double envelope_c = 1.0, ctol = 1e-8;
    uint64_t sieve_limit = 0;
    auto* cmd_scan = app.add_subcommand("scan", "exact vs predicted over a geometric grid");
    cmd_scan->add_option("--quantity", quantity_name,
                         "pi-s|s-prime|s-prime-power|s-lambda|cardinality|progression")->required();
    cmd_scan->add_option("--from", from_text)->required();
    cmd_scan->add_option("--to", to_text)->required();
    cmd_scan->add_option("--points", points)->required();
    cmd_scan->add_option("--normalizer", normalizer, "sqrt-x|x-9-19|pnt-envelope|lis-tail");
    cmd_scan->add_option("--envelope-c", envelope_c, "c for the pnt-envelope normalizer");
    cmd_scan->add_option("--q", q, "progression modulus");
    cmd_scan->add_option("--a", a, "progression residue");
    cmd_scan->add_option("--ctol", ctol, "C_f enclosure width for S_* predictions");
    cmd_scan->add_option("--sieve-limit", sieve_limit, "prime table limit for C_f (0: derive from --ctol)");
    cmd_scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    cmd_scan->add_option("--out", out_path, "output path, - for stdout");

    std::string fit_input;
    auto* cmd_fit = app.add_subcommand("fit", "log-log exponent fit of a scan CSV");
    cmd_fit->add_option("--input", fit_input)->required();

    uint64_t verify_max = 0, random_count = 0, random_max = 10'000'000, seed = 20240817;
    auto* cmd_verify = app.add_subcommand("verify", "block method vs the O(x) brute-force oracle");
    cmd_verify->add_option("--max-x", verify_max, "exhaustive upper bound")->required();
    cmd_verify->add_option("--random", random_count, "extra random draws above --max-x");
    cmd_verify->add_option("--random-max", random_max, "upper bound for random draws");
    cmd_verify->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cmd_pi_s->parsed()) {
        std::cout << format_uint(pi_S(parse_x_arg(x_text)).count) << "\n";
    } else if (cmd_s_count->parsed()) {
        auto r = floor_sum(parse_x_arg(x_text), parse_weight(f_name));
        if (r.quantity == Quantity::S_lambda)
            std::cout << format_double(r.real_value) << "\n";
        else
            std::cout << format_uint(r.count) << "\n";
    } else if (cmd_card->parsed()) {
        std::cout << format_uint(cardinality(parse_x_arg(x_text))) << "\n";
    } else if (cmd_prog->parsed()) {
        std::cout << format_uint(count_in_progression(parse_x_arg(x_text), q, a)) << "\n";
    } else if (cmd_li->parsed()) {
        std::cout << format_double(li(real_x)) << "\n";
    } else if (cmd_lis->parsed()) {
        if (real_x < 4.0) {
            std::cerr << "warning: li_S is defined for x >= 4; reporting 0\n";
            std::cout << "0\n";
        } else {
            std::cout << format_double(li_S(real_x)) << "\n";
        }
    } else if (cmd_coeffs->parsed()) {
        for (double v : expansion_coeffs(n_terms).a) std::cout << format_double(v) << "\n";
    } else if (cmd_const->parsed()) {
        WeightFn f = parse_weight(f_name);
        PrimeTable table = sieve(constant_required_limit(f, tol), {.threads = threads});
        auto interval = density_constant(f, tol, table);
        std::cout << format_double(interval.lower) << ' ' << format_double(interval.upper) << ' '
                  << format_uint(interval.cutoff) << "\n";
    } else if (cmd_psisum->parsed()) {
        print_psi_result(sawtooth_sum(parse_x_arg(x_text), d_lo, d_hi, delta,
                                      parse_psi_weight(weight_name)));
    } else if (cmd_rem->parsed()) {
        print_psi_result(remainder_sum(parse_x_arg(x_text), n_param, delta,
                                       parse_psi_weight(weight_name)));
    } else if (cmd_scan->parsed()) {
        ScanConfig config;
        config.quantity = parse_scan_quantity(quantity_name);
        config.x_from = parse_x_arg(from_text);
        config.x_to = parse_x_arg(to_text);
        config.points = points;
        config.normalizer = parse_normalizer(normalizer);
        config.envelope_c = envelope_c;
        config.prog_q = q;
        config.prog_a = a;
        config.constant_tol = ctol;
        config.sieve_limit = sieve_limit;
        config.threads = threads;
        ScanResult result = scan(config);

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (out_path != "-") {
            file.open(out_path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + out_path);
            out = &file;
        }
        if (format == "csv")
            write_csv(result.records, *out);
        else
            write_json(result, *out);
    } else if (cmd_fit->parsed()) {
        std::ifstream in(fit_input);
        if (!in) throw std::runtime_error("cannot open input file: " + fit_input);
        auto fit = fit_exponent(read_csv(in));
        std::cout << format_double(fit.slope) << ' ' << format_double(fit.intercept) << ' '
                  << format_double(fit.r2) << ' ' << fit.used << ' ' << fit.excluded << "\n";
    } else if (cmd_verify->parsed()) {
        if (verify_max < 1 || verify_max > brute_force_max_x)
            throw CLI::ValidationError("--max-x", "must lie in [1, 10^8]");
        if (random_count > 0 && random_max <= verify_max)
            throw CLI::ValidationError("--random-max", "must exceed --max-x");
        if (run_verify(verify_max, random_count, random_max, seed, threads) != 0) return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
