#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "qtv/asym.hpp"
#include "qtv/jones.hpp"
#include "qtv/statesum.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace qtv;

namespace {

// ---------------------------------------------------------------- output

struct Field {
    std::string name;
    std::string value;
};
using Record = std::vector<Field>;

class Writer {
public:
    explicit Writer(std::string format) : format_(std::move(format)) {}

    void write(const Record& rec) {
        if (format_ == "csv") {
            if (!header_done_) {
                for (std::size_t i = 0; i < rec.size(); ++i)
                    std::cout << (i ? "," : "") << rec[i].name;
                std::cout << "\n";
                header_done_ = true;
            }
            for (std::size_t i = 0; i < rec.size(); ++i)
                std::cout << (i ? "," : "") << rec[i].value;
            std::cout << "\n";
        } else if (format_ == "json") {
            json obj;
            for (const auto& f : rec) obj[f.name] = f.value;
            array_.push_back(obj);
        } else {
            for (std::size_t i = 0; i < rec.size(); ++i)
                std::cout << (i ? " " : "") << rec[i].name << "=" << rec[i].value;
            std::cout << "\n";
        }
        std::cout.flush();
    }

    void finish() {
        if (format_ == "json") std::cout << array_.dump(2) << "\n";
    }

private:
    std::string format_;
    bool header_done_ = false;
    json array_ = json::array();
};

std::string fmt_real(const Real& x, int digits) { return x.str(std::max(1, digits)); }

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

// ------------------------------------------------------------- r ranges

// "start:end:step" (end included when hit exactly) or a single value.
std::vector<int> parse_r_spec(const std::string& spec) {
    std::vector<int> out;
    auto bad = [&]() { throw CLI::ValidationError("--r", "bad range '" + spec + "'"); };
    if (spec.find(':') == std::string::npos) {
        try {
            out.push_back(std::stoi(spec));
        } catch (...) {
            bad();
        }
        return out;
    }
    int start = 0, end = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> end >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof()) bad();
    if (step <= 0 || end < start) bad();
    for (int r = start; r <= end; r += step) out.push_back(r);
    if (out.empty()) bad();
    return out;
}

// ----------------------------------------------------------------- cache

class ResultCache {
public:
    void open(const std::string& dir) {
        dir_ = dir;
        enabled_ = true;
        fs::create_directories(dir_);
    }
    bool enabled() const { return enabled_; }
    int hits() const { return hits_; }
    int misses() const { return misses_; }

    std::optional<Record> load(std::uint64_t key) {
        if (!enabled_) return std::nullopt;
        fs::path p = path_for(key);
        std::ifstream in(p);
        if (!in) {
            ++misses_;
            return std::nullopt;
        }
        try {
            json doc = json::parse(in);
            Record rec;
            for (auto it = doc.begin(); it != doc.end(); ++it)
                rec.push_back({it.key(), it.value().get<std::string>()});
            ++hits_;
            return rec;
        } catch (...) {
            ++misses_;
            return std::nullopt;
        }
    }

    void store(std::uint64_t key, const Record& rec) {
        if (!enabled_) return;
        json doc;
        for (const auto& f : rec) doc[f.name] = f.value;
        // write-rename so concurrent invocations never see a torn entry
        fs::path tmp = dir_ / (".tmp-" + std::to_string(::getpid()) + "-" +
                               std::to_string(counter_++));
        {
            std::ofstream out(tmp);
            out << doc.dump();
        }
        fs::rename(tmp, path_for(key));
    }

private:
    fs::path path_for(std::uint64_t key) const {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(key));
        return dir_ / ("qtv-" + std::string(buf) + ".json");
    }

    fs::path dir_;
    bool enabled_ = false;
    int hits_ = 0, misses_ = 0, counter_ = 0;
};

std::uint64_t mix_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto p : parts) {
        h ^= p;
        h *= 1099511628211ull;
    }
    return h;
}

// --------------------------------------------------------------- shared

struct CommonOpts {
    std::string census_name;
    std::string file_path;
    std::string r_spec;
    int digits = 12;
    int threads = 0;
    std::string format = "text";
    std::string cache_dir;
};

prec_t initial_bits_from_env() {
    const char* env = std::getenv("QTV_PRECISION_BITS");
    if (!env) return 256;
    long v = std::strtol(env, nullptr, 10);
    if (v < 64) throw CLI::ValidationError("QTV_PRECISION_BITS", "must be >= 64");
    return static_cast<prec_t>(v);
}

ColoredTriangulation resolve_manifold(const CommonOpts& opts, std::optional<ManifoldMeta>* meta) {
    if (opts.census_name.empty() == opts.file_path.empty())
        throw CLI::ValidationError("--census/--file", "exactly one of census name or file path");
    if (!opts.census_name.empty()) {
        auto [ct, m] = census(opts.census_name);
        if (meta) *meta = m;
        return ct;
    }
    std::ifstream in(opts.file_path);
    if (!in) throw std::runtime_error("cannot open '" + opts.file_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ColoredTriangulation ct = parse(buf.str());
    for (const auto& diag : validate(ct))
        if (diag.severity == Diagnostic::Severity::warning)
            std::cerr << "warning: " << diag.message << "\n";
    if (meta) *meta = std::nullopt;
    return ct;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_manifold = true) {
    if (with_manifold) {
        cmd->add_option("--census", opts.census_name, "built-in census entry");
        cmd->add_option("--file", opts.file_path, "qtv-v1 triangulation file");
    }
    cmd->add_option("--r", opts.r_spec, "level r or range start:end:step")->required();
    cmd->add_option("--digits", opts.digits, "requested verified decimal digits")
        ->default_val(12);
    cmd->add_option("--threads", opts.threads, "worker threads (0 = all)")->default_val(0);
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "text"}))
        ->default_val("text");
    cmd->add_option("--cache", opts.cache_dir, "result cache directory");
}

void finish_cache(const ResultCache& cache) {
    if (cache.enabled())
        std::cerr << "cache: " << cache.hits() << " hits, " << cache.misses() << " misses\n";
}

// ------------------------------------------------------------- commands

int cmd_tvqv(bool qv_mode, const CommonOpts& opts, int k_index) {
    std::optional<ManifoldMeta> meta;
    ColoredTriangulation ct = resolve_manifold(opts, &meta);
    std::vector<int> rs = parse_r_spec(opts.r_spec);
    prec_t bits = initial_bits_from_env();
    int k = qv_mode ? 2 : k_index;
    if (qv_mode)
        for (int r : rs)
            if (r % 2 == 0)
                throw CLI::ValidationError("--r", "qv needs odd r; got " + std::to_string(r));

    ResultCache cache;
    if (!opts.cache_dir.empty()) cache.open(opts.cache_dir);
    Writer out(opts.format);
    bool partial = false;

    TvOptions tvopt;
    tvopt.requested_digits = opts.digits;
    tvopt.threads = opts.threads;

    for (int r : rs) {
        std::uint64_t key = mix_key({structural_hash(ct), static_cast<std::uint64_t>(r),
                                     static_cast<std::uint64_t>(k),
                                     static_cast<std::uint64_t>(opts.digits),
                                     static_cast<std::uint64_t>(bits), qv_mode ? 2u : 1u});
        if (auto hit = cache.load(key)) {
            for (auto& f : *hit)
                if (f.name == "elapsed_ms") f.value = "0";
            out.write(*hit);
            continue;
        }
        Record rec{{"r", std::to_string(r)},   {"k", std::to_string(k)},
                   {"tv_re", ""},              {"tv_im_residual", ""},
                   {"qv_re", ""},              {"qv_im", ""},
                   {"verified_digits", ""},    {"elapsed_ms", ""}};
        auto t0 = std::chrono::steady_clock::now();
        try {
            if (k == 2 && r % 2 == 1) {
                TvQv both = tv_and_qv(ct, r, bits, tvopt);
                int digits = std::min(both.tv.verified_digits, both.qv.verified_digits);
                int show = std::min(digits, opts.digits);
                rec[2].value = fmt_real(both.tv.re, show);
                rec[3].value = fmt_real(abs(both.tv.im), 3);
                rec[4].value = fmt_real(both.qv.re, show);
                rec[5].value = fmt_real(both.qv.im, show);
                rec[6].value = std::to_string(digits);
            } else {
                Root root = make_root(r, k, bits);
                InvariantValue v = tv(ct, root, tvopt);
                int show = std::min(v.verified_digits, opts.digits);
                rec[2].value = fmt_real(v.re, show);
                rec[3].value = fmt_real(abs(v.im), 3);
                rec[6].value = std::to_string(v.verified_digits);
            }
        } catch (const std::exception& e) {
            std::cerr << "error: r=" << r << ": " << e.what() << "\n";
            partial = true;
            out.write(rec);
            continue;
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        rec[7].value = std::to_string(ms);
        cache.store(key, rec);
        out.write(rec);
    }
    out.finish();
    finish_cache(cache);
    return partial ? 2 : 0;
}

int cmd_rt(const CommonOpts& opts, const std::string& knot_name_str, int p) {
    auto knot = knot_from_name(knot_name_str);
    if (!knot) throw CLI::ValidationError("--knot", "unknown knot '" + knot_name_str + "'");
    if (p == 0) throw CLI::ValidationError("--p", "surgery coefficient must be nonzero");
    std::vector<int> rs = parse_r_spec(opts.r_spec);
    for (int r : rs)
        if (r % 2 == 0 || r < 7)
            throw CLI::ValidationError("--r", "rt needs odd r >= 7; got " + std::to_string(r));
    prec_t bits = initial_bits_from_env();

    ResultCache cache;
    if (!opts.cache_dir.empty()) cache.open(opts.cache_dir);
    Writer out(opts.format);
    bool partial = false;

    auto target = surgery_target(*knot, p);
    for (int r : rs) {
        std::uint64_t key = mix_key({0x7274u, static_cast<std::uint64_t>(*knot),
                                     static_cast<std::uint64_t>(static_cast<std::int64_t>(p)),
                                     static_cast<std::uint64_t>(r),
                                     static_cast<std::uint64_t>(opts.digits),
                                     static_cast<std::uint64_t>(bits)});
        if (auto hit = cache.load(key)) {
            for (auto& f : *hit)
                if (f.name == "elapsed_ms") f.value = "0";
            out.write(*hit);
            continue;
        }
        Record rec{{"r", std::to_string(r)},
                   {"qr_re", ""},
                   {"qr_im", ""},
                   {"qr_im_raw", ""},
                   {"target_vol", target ? fmt_double(target->first) : ""},
                   {"target_cs", target ? fmt_double(target->second) : ""},
                   {"verified_digits", ""},
                   {"elapsed_ms", ""}};
        auto t0 = std::chrono::steady_clock::now();
        try {
            QrOptions qopt;
            qopt.initial_bits = bits;
            qopt.requested_digits = opts.digits;
            qopt.threads = opts.threads;
            if (target) qopt.target_im = target->second;
            QrResult q = qr(*knot, p, r, qopt);
            int show = std::min(q.verified_digits, opts.digits);
            rec[1].value = fmt_real(q.value.re(), show);
            rec[2].value = fmt_real(q.value.im(), show);
            rec[3].value = fmt_real(q.im_raw, show);
            rec[6].value = std::to_string(q.verified_digits);
        } catch (const std::exception& e) {
            std::cerr << "error: r=" << r << ": " << e.what() << "\n";
            partial = true;
            out.write(rec);
            continue;
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        rec[7].value = std::to_string(ms);
        cache.store(key, rec);
        out.write(rec);
    }
    out.finish();
    finish_cache(cache);
    return partial ? 2 : 0;
}

int cmd_verify(const std::string& identity, int r, int k, int samples, bool exhaustive,
               double threshold, std::uint64_t seed, const std::string& format, int threads) {
    prec_t bits = initial_bits_from_env();
    Root root = make_root(r, k, bits);
    int nt = threads > 0 ? threads : omp_get_max_threads();

    std::vector<std::array<Color, 9>> inputs;  // widest case; unused slots zero
    if (identity == "orthogonality") {
        if (exhaustive)
            for_each_orthogonality_input(r, [&](const std::array<Color, 6>& c) {
                inputs.push_back({c[0], c[1], c[2], c[3], c[4], c[5], 0, 0, 0});
            });
        else {
            std::mt19937_64 rng(seed);
            for (int i = 0; i < samples; ++i) {
                auto c = sample_orthogonality_input(rng, r);
                inputs.push_back({c[0], c[1], c[2], c[3], c[4], c[5], 0, 0, 0});
            }
        }
    } else if (identity == "be") {
        if (exhaustive)
            for_each_be_input(r, [&](const std::array<Color, 9>& c) { inputs.push_back(c); });
        else {
            std::mt19937_64 rng(seed);
            for (int i = 0; i < samples; ++i) inputs.push_back(sample_be_input(rng, r));
        }
    } else if (identity == "symmetry") {
        if (exhaustive)
            for_each_admissible_tuple(r, [&](const SixTuple& t) {
                inputs.push_back({t[0], t[1], t[2], t[3], t[4], t[5], 0, 0, 0});
            });
        else {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<Color> pick(0, r - 2);
            while (static_cast<int>(inputs.size()) < samples) {
                SixTuple t{pick(rng), pick(rng), pick(rng), pick(rng), pick(rng), pick(rng)};
                if (is_admissible_tuple(t, r))
                    inputs.push_back({t[0], t[1], t[2], t[3], t[4], t[5], 0, 0, 0});
            }
        }
    } else {
        throw CLI::ValidationError("--identity", "unknown identity '" + identity + "'");
    }

    double max_res = 0;
    const long long n_inputs = static_cast<long long>(inputs.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt) reduction(max : max_res)
    for (long long i = 0; i < n_inputs; ++i) {
        const auto& c = inputs[static_cast<std::size_t>(i)];
        double res = 0;
        if (identity == "orthogonality")
            res = check_orthogonality(c[0], c[1], c[2], c[3], c[4], c[5], root).to_double();
        else if (identity == "be")
            res = check_biedenharn_elliot(c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8],
                                          root)
                      .to_double();
        else {
            SixTuple t{c[0], c[1], c[2], c[3], c[4], c[5]};
            Complex ref = sixj_direct(t, root);
            for (int s = 1; s < kNumSymmetries; ++s)
                res = std::max(res, abs(sixj_direct(apply_symmetry(t, s), root) - ref).to_double());
        }
        max_res = std::max(max_res, res);
    }

    bool pass = max_res < threshold;
    Writer out(format);
    char res_buf[32];
    std::snprintf(res_buf, sizeof res_buf, "%.3e", max_res);
    char thr_buf[32];
    std::snprintf(thr_buf, sizeof thr_buf, "%.1e", threshold);
    out.write({{"identity", identity},
               {"r", std::to_string(r)},
               {"k", std::to_string(k)},
               {"mode", exhaustive ? "exhaustive" : "samples"},
               {"inputs", std::to_string(inputs.size())},
               {"max_residual", res_buf},
               {"threshold", thr_buf},
               {"pass", pass ? "true" : "false"}});
    out.finish();
    return pass ? 0 : 1;
}

int cmd_fit(const CommonOpts& opts, double vol_flag) {
    std::optional<ManifoldMeta> meta;
    ColoredTriangulation ct = resolve_manifold(opts, &meta);
    double vol = vol_flag;
    if (vol == 0) {
        if (!meta) throw CLI::ValidationError("--vol", "no reference volume; pass --vol");
        vol = meta->vol;
    }
    std::vector<int> rs = parse_r_spec(opts.r_spec);
    prec_t bits = initial_bits_from_env();
    TvOptions tvopt;
    tvopt.requested_digits = opts.digits;
    tvopt.threads = opts.threads;

    std::vector<std::pair<int, double>> points;
    int failed = 0;
    for (int r : rs) {
        try {
            points.push_back({r, phi(ct, r, vol, bits, tvopt).to_double()});
        } catch (const std::exception& e) {
            std::cerr << "error: r=" << r << ": " << e.what() << "\n";
            ++failed;
        }
    }
    FitResult fit = fit_logline(points);
    Writer out(opts.format);
    out.write({{"manifold", ct.name},
               {"n_points", std::to_string(fit.n_points)},
               {"n_failed", std::to_string(failed)},
               {"slope", fmt_double(fit.slope)},
               {"intercept", fmt_double(fit.intercept)},
               {"rms_residual", fmt_double(fit.rms_residual)}});
    out.finish();
    return failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turaev-Viro type invariants, RT surgery invariants and their asymptotics"};
    app.require_subcommand(1);

    CommonOpts tv_opts, qv_opts, rt_opts, fit_opts;
    int tv_k = 1;
    std::string rt_knot;
    int rt_p = 0;
    double fit_vol = 0;

    CLI::App* tv_cmd = app.add_subcommand("tv", "Turaev-Viro invariant TV_r at q = e^{k pi i/r}");
    add_common(tv_cmd, tv_opts);
    tv_cmd->add_option("--k", tv_k, "root index k (gcd(k,r)=1)")->default_val(1);

    CLI::App* qv_cmd = app.add_subcommand("qv", "QV_r growth quantity at q = e^{2 pi i/r}");
    add_common(qv_cmd, qv_opts);

    CLI::App* rt_cmd = app.add_subcommand("rt", "Q_r for p-surgery along fig8 or k52");
    add_common(rt_cmd, rt_opts, false);
    rt_cmd->add_option("--knot", rt_knot, "fig8 or k52")->required();
    rt_cmd->add_option("--p", rt_p, "surgery coefficient (nonzero)")->required();

    CLI::App* fit_cmd = app.add_subcommand("fit", "least-squares fit of Phi_r against ln(r-2)");
    add_common(fit_cmd, fit_opts);
    fit_cmd->add_option("--vol", fit_vol, "reference volume override");

    std::string vf_identity;
    int vf_r = 7, vf_k = 1, vf_samples = 0, vf_threads = 0;
    bool vf_exhaustive = false;
    double vf_threshold = 1e-25;
    std::uint64_t vf_seed = 12345;
    std::string vf_format = "text";
    CLI::App* vf_cmd = app.add_subcommand("verify", "6j identity checkers");
    vf_cmd->add_option("--identity", vf_identity, "orthogonality | be | symmetry")->required();
    vf_cmd->add_option("--r", vf_r)->required();
    vf_cmd->add_option("--k", vf_k)->default_val(1);
    auto* samples_opt = vf_cmd->add_option("--samples", vf_samples, "random sample count");
    auto* exhaustive_opt =
        vf_cmd->add_flag("--exhaustive", vf_exhaustive, "enumerate all admissible inputs");
    samples_opt->excludes(exhaustive_opt);
    vf_cmd->add_option("--threshold", vf_threshold)->default_val(1e-25);
    vf_cmd->add_option("--seed", vf_seed)->default_val(12345);
    vf_cmd->add_option("--threads", vf_threads)->default_val(0);
    vf_cmd->add_option("--format", vf_format)
        ->check(CLI::IsMember({"csv", "json", "text"}))
        ->default_val("text");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tv_cmd->parsed()) return cmd_tvqv(false, tv_opts, tv_k);
        if (qv_cmd->parsed()) return cmd_tvqv(true, qv_opts, 2);
        if (rt_cmd->parsed()) return cmd_rt(rt_opts, rt_knot, rt_p);
        if (fit_cmd->parsed()) return cmd_fit(fit_opts, fit_vol);
        if (vf_cmd->parsed()) {
            if (!vf_exhaustive && vf_samples <= 0)
                throw CLI::ValidationError("--samples", "pass --samples N or --exhaustive");
            return cmd_verify(vf_identity, vf_r, vf_k, vf_samples, vf_exhaustive, vf_threshold,
                              vf_seed, vf_format, vf_threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
