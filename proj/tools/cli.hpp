#pragma once

// Command-line front end. run() is kept separate from main() so tests can drive it in-process.

#include "suites.hpp"

#include <coha/coha.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef COHA_TESTDATA
#define COHA_TESTDATA "testdata"
#endif

namespace coha::cli
{

enum ExitCode { ok = 0, verification_failed = 1, usage = 2 };

/// Bad invocation or input; maps to exit code 2.
class UsageError : public Error
{
public:
    using Error::Error;
};

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

inline QuiverDocument load_quiver(const std::string &path)
{
    try {
        return parse_quiver(read_file(path));
    } catch (const DocumentError &e) {
        throw UsageError(path + ": " + e.what());
    }
}

inline json load_json(const std::string &path)
{
    try {
        return detail::parse_text(read_file(path));
    } catch (const DocumentError &e) {
        throw UsageError(path + ": " + e.what());
    }
}

/// "v1=re,im;v2=re,im" with one entry per vertex of q.
inline CentralCharge parse_charge(const std::string &text, const Quiver &q)
{
    std::vector<std::optional<CentralCharge::Point>> pts(q.rank());
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        const auto comma = item.find(',', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || comma == std::string::npos) {
            throw UsageError("charge entry '" + item + "' is not of the form vertex=re,im");
        }
        const std::string v = item.substr(0, eq);
        const auto &vs = q.vertices();
        const auto it = std::find(vs.begin(), vs.end(), v);
        if (it == vs.end()) {
            throw UsageError("charge names unknown vertex '" + v + "'");
        }
        auto &slot = pts[static_cast<std::size_t>(it - vs.begin())];
        if (slot) {
            throw UsageError("charge gives vertex '" + v + "' twice");
        }
        try {
            slot = CentralCharge::Point{parse_rational(item.substr(eq + 1, comma - eq - 1)),
                                        parse_rational(item.substr(comma + 1))};
        } catch (const Error &e) {
            throw UsageError("charge entry '" + item + "': " + e.what());
        }
        if (slot->im <= 0) {
            throw UsageError("charge of vertex '" + v + "' must have positive imaginary part");
        }
    }
    std::vector<CentralCharge::Point> out;
    for (std::size_t i = 0; i < q.rank(); ++i) {
        if (!pts[i]) {
            throw UsageError("charge is missing vertex '" + q.vertices()[i] + "'");
        }
        out.push_back(*pts[i]);
    }
    return CentralCharge(std::move(out));
}

inline void emit(const json &doc, const std::string &path, std::ostream &out)
{
    const std::string text = doc.dump(2) + "\n";
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw UsageError("cannot write '" + path + "'");
    }
}

struct Job {
    std::string quiver, series, f1, f2, out, charge, vertex, suite = "all";
    std::optional<long> truncate;
    std::uint64_t seed = 1;
    bool twisted = false;
    std::string golden = std::string(COHA_TESTDATA) + "/macmahon_q3.json";
};

/// The input series: the zero-potential DT-series of the quiver or an ingested document.
inline TorusSeries input_series(const Job &job, const QuiverDocument &qd)
{
    auto q = std::make_shared<const Quiver>(qd.quiver);
    if (!job.series.empty()) {
        try {
            return ingest_series(load_json(job.series), q, job.truncate);
        } catch (const DocumentError &e) {
            throw UsageError(job.series + ": " + e.what());
        }
    }
    if (!job.truncate) {
        throw UsageError("--truncate is required unless --series is given");
    }
    if (!qd.potential.terms().empty()) {
        throw UsageError("the DT-series of a quiver with nonzero potential cannot be computed here; pass --series");
    }
    return dt_series_zero_potential(q, *job.truncate);
}

inline int cmd_dt_series(const Job &job, std::ostream &out)
{
    const auto qd = load_quiver(job.quiver);
    Job j = job;
    j.series.clear();
    emit(series_to_json(input_series(j, qd)), job.out, out);
    return ok;
}

inline int cmd_factorize(const Job &job, std::ostream &out)
{
    const auto qd = load_quiver(job.quiver);
    const TorusSeries a = input_series(job, qd);
    const CentralCharge z = parse_charge(job.charge, qd.quiver);
    const auto factors = hn_peel(a, z);
    json fs = json::array();
    bool laurent = true;
    for (const auto &rf : factors) {
        const auto omega = refined_dt(rf.factor, rf.ray);
        laurent = laurent && omega.laurent_ok;
        fs.push_back({{"ray", dim_vector_to_json(rf.ray.primitive())}, {"series", series_to_json(rf.factor)}});
    }
    const bool residual = clockwise_product(factors, TorusSeries::one(a.quiver_ptr(), a.basis(), a.truncation())) == a;
    emit({{"factors", std::move(fs)}, {"verdict", {{"residual_one", residual}, {"laurent_ok", laurent}}}}, job.out,
         out);
    return residual && laurent ? ok : verification_failed;
}

inline int cmd_invariants(const Job &job, std::ostream &out)
{
    const auto qd = load_quiver(job.quiver);
    const TorusSeries a = to_basis(input_series(job, qd), Basis::EHAT);
    const CentralCharge z = parse_charge(job.charge, qd.quiver);
    const auto res = quantum_admissible_factorize(a, z);
    json rays = json::array();
    for (const auto &rc : res.rays) {
        json entry{{"ray", dim_vector_to_json(rc.ray.primitive())}, {"admissible", static_cast<bool>(rc.result)}};
        if (rc.result) {
            entry["certificate"] = certificate_to_json(*rc.result.certificate);
        } else {
            entry["failed_at"] = dim_vector_to_json(*rc.result.failed_at);
            entry["reason"] = rc.result.reason;
        }
        rays.push_back(std::move(entry));
    }
    emit({{"rays", std::move(rays)}, {"verdict", {{"residual_one", true}, {"laurent_ok", res.ok}}}}, job.out, out);
    return res.ok ? ok : verification_failed;
}

inline int cmd_coha_product(const Job &job, std::ostream &out)
{
    const auto qd = load_quiver(job.quiver);
    auto read = [&](const std::string &path) {
        try {
            return CohaElement(sympoly_from_json(load_json(path), qd.quiver.rank()));
        } catch (const DocumentError &e) {
            throw UsageError(path + ": " + e.what());
        }
    };
    const CohaElement a = read(job.f1), b = read(job.f2);
    const CohaElement p = job.twisted ? star_product(qd.quiver, a, b) : shuffle_product(qd.quiver, a, b);
    emit(sympoly_to_json(p.poly()), job.out, out);
    return ok;
}

inline int cmd_mutate(const Job &job, std::ostream &out)
{
    const auto qd = load_quiver(job.quiver);
    const auto [q, w] = mutate_potential(qd.quiver, qd.potential, job.vertex);
    emit(quiver_to_json(q, w), job.out, out);
    return ok;
}

inline int cmd_check(const Job &job, std::ostream &out)
{
    const auto &reg = suites::registry();
    std::vector<std::string> names;
    if (job.suite == "all") {
        for (const auto &[name, fn] : reg) {
            names.push_back(name);
        }
    } else {
        const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto &e) { return e.first == job.suite; });
        if (it == reg.end()) {
            throw UsageError("unknown suite '" + job.suite + "'");
        }
        names.push_back(job.suite);
    }
    suites::SuiteOptions opt{job.seed, job.series.empty() ? job.golden : job.series};
    bool all = true;
    for (const auto &name : names) {
        const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto &e) { return e.first == name; });
        const auto rep = it->second(opt);
        out << (rep.pass ? "PASS " : "FAIL ") << name << "\n";
        for (const auto &line : rep.lines) {
            out << "  " << line << "\n";
        }
        all = all && rep.pass;
    }
    return all ? ok : verification_failed;
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Cohomological Hall algebras and DT-series of quivers"};
    app.require_subcommand(1);
    Job job;
    auto truncate = [&](CLI::App *c) {
        c->add_option("--truncate", job.truncate, "Truncation order N (total degree)")->check(CLI::NonNegativeNumber);
    };
    auto quiver = [&](CLI::App *c) { c->add_option("--quiver", job.quiver, "Quiver document")->required(); };
    auto output = [&](CLI::App *c) { c->add_option("--out", job.out, "Output path (default: stdout)"); };

    auto *dt = app.add_subcommand("dt-series", "Zero-potential DT-series of a quiver");
    quiver(dt);
    truncate(dt);
    output(dt);
    dt->get_option("--truncate")->required();

    auto *fac = app.add_subcommand("factorize", "Ordered ray factorization along a central charge");
    auto *inv = app.add_subcommand("invariants", "Admissibility certificates of the ray factors");
    for (auto *c : {fac, inv}) {
        quiver(c);
        truncate(c);
        output(c);
        c->add_option("--series", job.series, "Series document to use instead of the DT-series");
        c->add_option("--charge", job.charge, "Central charge \"v1=re,im;v2=re,im\"")->required();
    }

    auto *prod = app.add_subcommand("coha-product", "Shuffle product of two symmetric polynomials");
    quiver(prod);
    output(prod);
    prod->add_option("--f1", job.f1, "Left factor")->required();
    prod->add_option("--f2", job.f2, "Right factor")->required();
    prod->add_flag("--twisted", job.twisted, "Use the sign-twisted product (symmetric quivers)");

    auto *mut = app.add_subcommand("mutate", "Mutation of a quiver with potential");
    quiver(mut);
    output(mut);
    mut->add_option("--vertex", job.vertex, "Vertex to mutate at")->required();

    auto *chk = app.add_subcommand("check", "Run verification suites");
    chk->add_option("suite", job.suite, "pentagon, reineke, macmahon, dynkin, theorem6, theorem9 or all");
    chk->add_option("--seed", job.seed, "Seed for randomized suites");
    chk->add_option("--series", job.series, "MacMahon series document for the macmahon suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return usage;
    }

    try {
        if (dt->parsed()) {
            return cmd_dt_series(job, out);
        }
        if (fac->parsed()) {
            return cmd_factorize(job, out);
        }
        if (inv->parsed()) {
            return cmd_invariants(job, out);
        }
        if (prod->parsed()) {
            return cmd_coha_product(job, out);
        }
        if (mut->parsed()) {
            return cmd_mutate(job, out);
        }
        return cmd_check(job, out);
    } catch (const InternalError &e) {
        err << "internal error: " << e.what() << "\n";
        return verification_failed;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

} // namespace coha::cli
