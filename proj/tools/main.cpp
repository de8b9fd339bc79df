#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tubal/algebra.hpp"
#include "tubal/completion.hpp"
#include "tubal/errors.hpp"
#include "tubal/factorization.hpp"
#include "tubal/io.hpp"
#include "tubal/oracle.hpp"
#include "tubal/synth.hpp"

namespace {

using namespace tubal;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

struct SynthArgs {
    std::size_t m = 0, n = 0, p = 0, rank = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct MaskArgs {
    std::vector<std::size_t> dims;
    double miss_rate = 0.5;
    std::uint64_t seed = 0;
    std::string out;
};

struct DecomposeArgs {
    std::string input;
    std::size_t rank = 1;
    std::size_t iters = kDefaultCtsvdIters;
    std::string out_l, out_d, out_r, diagnostics;
};

struct CompleteArgs {
    std::string input, mask, out, diagnostics, truth;
    double miss_rate = -1.0;
    std::uint64_t seed = 0;
    std::size_t rank = 1;
    double mu = 1e-2;
    double rho = 1.5;
    double eps = 0.0;
    bool eps_given = false;
    std::size_t max_iters = 100;
};

struct MetricsArgs {
    std::string a, b;
};

struct ConvertArgs {
    std::string from_image, from_frames, to_image, input, out;
};

int run_synth(const SynthArgs& a) {
    io::write_tensor(a.out, synth_lowrank({a.m, a.n, a.p, a.rank, a.seed}));
    return kExitOk;
}

int run_mask(const MaskArgs& a) {
    if (a.dims.size() != 3) {
        std::fprintf(stderr, "tubal mask: --dims needs n1,n2,n3\n");
        return kExitUsage;
    }
    io::write_mask(a.out, gen_mask(a.dims[0], a.dims[1], a.dims[2], a.miss_rate, a.seed));
    return kExitOk;
}

int run_decompose(const DecomposeArgs& a) {
    RealTensor3 x = io::read_tensor(a.input);
    std::vector<DecomposeTraceRow> trace;
    FactorTriple f = ctsvd_qr(x, a.rank, a.iters, a.diagnostics.empty() ? nullptr : &trace);
    if (!a.out_l.empty()) io::write_tensor(a.out_l, f.l);
    if (!a.out_d.empty()) io::write_tensor(a.out_d, f.d);
    if (!a.out_r.empty()) io::write_tensor(a.out_r, f.r);
    if (!a.diagnostics.empty()) {
        std::ofstream csv = open_csv(a.diagnostics);
        csv << "iter,rmse,elapsed_ms\n";
        for (const DecomposeTraceRow& row : trace)
            csv << row.iter << ',' << fmt(row.rmse) << ',' << fmt(row.elapsed_ms) << '\n';
    }
    std::printf("iterations=%zu\n", f.iterations);
    return kExitOk;
}

int run_complete(const CompleteArgs& a) {
    RealTensor3 m = io::read_tensor(a.input);

    ObservationMask omega;
    if (!a.mask.empty()) {
        omega = io::read_mask(a.mask);
    } else if (a.miss_rate >= 0.0) {
        omega = gen_mask(m.n1(), m.n2(), m.n3(), a.miss_rate, a.seed);
    } else {
        std::fprintf(stderr, "tubal complete: give either --mask or --miss-rate\n");
        return kExitUsage;
    }

    std::optional<RealTensor3> truth;
    if (!a.truth.empty()) truth = io::read_tensor(a.truth);

    CompletionConfig cfg;
    cfg.rank = a.rank;
    cfg.mu0 = a.mu;
    cfg.rho = a.rho;
    if (a.eps_given) cfg.eps = a.eps;  // <= 0 rejected by the solver
    cfg.max_iters = a.max_iters;
    cfg.seed = a.seed;

    IterationObserver progress = [](const CompletionTraceRow& row) {
        if (row.iter % 10 == 0)
            std::fprintf(stderr, "tubal complete: iter %zu residual=%.6e mu=%.3e\n", row.iter,
                         row.residual, row.mu);
    };

    CompletionReport rep = tlnm_tqr(m, omega, cfg, truth ? &*truth : nullptr, progress);

    io::write_tensor(a.out, rep.x);
    if (!a.diagnostics.empty()) {
        std::ofstream csv = open_csv(a.diagnostics);
        csv << "iter,residual,mu,rmse_vs_truth,elapsed_ms\n";
        for (const CompletionTraceRow& row : rep.trace) {
            csv << row.iter << ',' << fmt(row.residual) << ',' << fmt(row.mu) << ',';
            if (row.rmse) csv << fmt(*row.rmse);
            csv << ',' << fmt(row.elapsed_ms) << '\n';
        }
    }

    std::printf("iterations=%zu\n", rep.iterations);
    std::printf("converged=%s\n", rep.converged ? "true" : "false");
    std::printf("residual=%s\n",
                fmt(rep.trace.empty() ? 0.0 : rep.trace.back().residual).c_str());
    if (truth) std::printf("rmse_vs_truth=%s\n", fmt(rmse(rep.x, *truth)).c_str());
    return kExitOk;
}

int run_metrics(const MetricsArgs& args) {
    RealTensor3 a = io::read_tensor(args.a);
    RealTensor3 b = io::read_tensor(args.b);
    const double r = rmse(a, b);
    const double num = frobenius_norm(subtract(a, b));
    const double den = frobenius_norm(b);
    const double rel = (num == 0.0) ? 0.0 : num / den;
    std::printf("rmse=%s\n", fmt(r).c_str());
    std::printf("relerr=%s\n", fmt(rel).c_str());
    return kExitOk;
}

int run_convert(const ConvertArgs& a) {
    const int modes =
        (!a.from_image.empty()) + (!a.from_frames.empty()) + (!a.to_image.empty());
    if (modes != 1) {
        std::fprintf(stderr,
                     "tubal convert: give exactly one of --from-image, --from-frames, "
                     "--to-image\n");
        return kExitUsage;
    }
    if (!a.from_image.empty()) {
        if (a.out.empty()) {
            std::fprintf(stderr, "tubal convert: --from-image needs --out\n");
            return kExitUsage;
        }
        io::write_tensor(a.out, io::read_image(a.from_image));
    } else if (!a.from_frames.empty()) {
        if (a.out.empty()) {
            std::fprintf(stderr, "tubal convert: --from-frames needs --out\n");
            return kExitUsage;
        }
        io::write_tensor(a.out, io::read_frames(a.from_frames));
    } else {
        if (a.input.empty()) {
            std::fprintf(stderr, "tubal convert: --to-image needs --input\n");
            return kExitUsage;
        }
        io::write_image(a.to_image, io::read_tensor(a.input));
    }
    return kExitOk;
}

int run_verify() {
    oracle::VerifyResult vr = oracle::run_verification();
    for (const std::string& line : vr.log) std::printf("%s\n", line.c_str());
    std::printf("checks=%zu failures=%zu\n", vr.checks, vr.failures);
    return vr.failures == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-tubal-rank tensor completion toolkit"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a synthetic low-tubal-rank tensor (t-product of two "
                 "standard-normal tensors)");
    synth->add_option("--m", synth_args.m, "rows")->required();
    synth->add_option("--n", synth_args.n, "columns")->required();
    synth->add_option("--p", synth_args.p, "frontal slices")->required();
    synth->add_option("--tubal-rank", synth_args.rank, "tubal rank of the construction")
        ->required();
    synth->add_option("--seed", synth_args.seed, "PRNG seed (SplitMix64 counter stream)");
    synth->add_option("--out", synth_args.out, "output TNS3 path")->required();

    MaskArgs mask_args;
    CLI::App* mask = app.add_subcommand("mask", "Generate a Bernoulli observation mask");
    mask->add_option("--dims", mask_args.dims, "tensor dimensions n1,n2,n3")
        ->required()
        ->delimiter(',');
    mask->add_option("--miss-rate", mask_args.miss_rate, "missing fraction in [0,1)")
        ->required();
    mask->add_option("--seed", mask_args.seed, "PRNG seed");
    mask->add_option("--out", mask_args.out, "output MSK3 path")->required();

    DecomposeArgs dec_args;
    CLI::App* dec = app.add_subcommand(
        "decompose", "Approximate tensor SVD by alternating QR passes (CTSVD-QR)");
    dec->add_option("--input", dec_args.input, "input TNS3 path")->required();
    dec->add_option("--rank", dec_args.rank, "number of singular tubes to keep")->required();
    dec->add_option("--iters", dec_args.iters, "iteration budget");
    dec->add_option("--out-l", dec_args.out_l, "left factor output path");
    dec->add_option("--out-d", dec_args.out_d, "middle factor output path");
    dec->add_option("--out-r", dec_args.out_r, "right factor output path");
    dec->add_option("--diagnostics", dec_args.diagnostics,
                    "CSV path for per-iteration reconstruction RMSE");

    CompleteArgs comp_args;
    CLI::App* comp = app.add_subcommand(
        "complete", "Recover missing entries by tensor L2,1-norm minimization (TLNM-TQR). "
                    "The tolerance --eps bounds the squared residual ||L*D*R - X||_F^2, "
                    "so it scales with tensor size; unset, it defaults to "
                    "1e-7 * n1*n2*n3.");
    comp->add_option("--input", comp_args.input, "observed tensor, TNS3")->required();
    comp->add_option("--mask", comp_args.mask, "observation mask, MSK3");
    comp->add_option("--miss-rate", comp_args.miss_rate,
                     "generate the mask on the fly with this missing fraction");
    comp->add_option("--seed", comp_args.seed, "seed for --miss-rate mask generation");
    comp->add_option("--rank", comp_args.rank, "target tubal rank")->required();
    comp->add_option("--mu", comp_args.mu, "initial penalty");
    comp->add_option("--rho", comp_args.rho, "penalty growth factor");
    comp->add_option("--eps", comp_args.eps, "squared-residual tolerance")
        ->each([&comp_args](const std::string&) { comp_args.eps_given = true; });
    comp->add_option("--max-iters", comp_args.max_iters, "iteration cap");
    comp->add_option("--out", comp_args.out, "recovered tensor output path")->required();
    comp->add_option("--diagnostics", comp_args.diagnostics, "CSV path for the solver trace");
    comp->add_option("--truth", comp_args.truth,
                     "ground-truth tensor; fills the rmse_vs_truth column");

    MetricsArgs met_args;
    CLI::App* met = app.add_subcommand("metrics", "RMSE and relative Frobenius error");
    met->add_option("--a", met_args.a, "tensor A, TNS3")->required();
    met->add_option("--b", met_args.b, "tensor B (reference), TNS3")->required();

    ConvertArgs conv_args;
    CLI::App* conv = app.add_subcommand("convert", "Convert between images and TNS3 tensors");
    conv->add_option("--from-image", conv_args.from_image, "read a PGM/PPM image");
    conv->add_option("--from-frames", conv_args.from_frames,
                     "read a directory of grayscale frames");
    conv->add_option("--to-image", conv_args.to_image, "write a PGM/PPM image here");
    conv->add_option("--input", conv_args.input, "input TNS3 (with --to-image)");
    conv->add_option("--out", conv_args.out, "output TNS3 (with --from-*)");

    CLI::App* verify =
        app.add_subcommand("verify", "Cross-check fast paths against the dense references");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (synth->parsed()) return run_synth(synth_args);
        if (mask->parsed()) return run_mask(mask_args);
        if (dec->parsed()) return run_decompose(dec_args);
        if (comp->parsed()) return run_complete(comp_args);
        if (met->parsed()) return run_metrics(met_args);
        if (conv->parsed()) return run_convert(conv_args);
        if (verify->parsed()) return run_verify();
    } catch (const IoError& e) {
        std::fprintf(stderr, "tubal: %s\n", e.what());
        return kExitIo;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "tubal: %s\n", e.what());
        return kExitIo;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "tubal: %s\n", e.what());
        return kExitNumerical;
    } catch (const SymmetryError& e) {
        std::fprintf(stderr, "tubal: %s\n", e.what());
        return kExitNumerical;
    } catch (const Error& e) {
        // Shape, rank, range and configuration problems stem from the
        // arguments given.
        std::fprintf(stderr, "tubal: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "tubal: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
