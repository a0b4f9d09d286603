#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "glu/baseline.hpp"
#include "glu/grid.hpp"
#include "glu/io.hpp"
#include "glu/jointopt.hpp"
#include "glu/metrics.hpp"
#include "glu/parallel.hpp"
#include "glu/simop.hpp"
#include "glu/synth.hpp"
#include "glu/upsample.hpp"

namespace {

using glu::ImageF32;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmtNum(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Report key set is fixed; timing values live under stage_times_ms so
// everything else is reproducible across runs and thread counts.
json runReport(int scale, const std::string& mode, int iterations, int accepted, int rejected,
               json psnrDb, json ssimVal, json stageTimes) {
    return json{{"scale", scale},
                {"mode", mode},
                {"iterations", iterations},
                {"trials_accepted", accepted},
                {"trials_rejected", rejected},
                {"psnr_db", std::move(psnrDb)},
                {"ssim", std::move(ssimVal)},
                {"stage_times_ms", std::move(stageTimes)}};
}

std::string methodName(glu::Mode mode, bool joint) {
    if (mode == glu::Mode::Gnu) return "gnu";
    return joint ? "glu" : "glu-minus";
}

constexpr const char* kCsvHeader = "image,scale,method,operator,psnr_db,ssim,optimize_ms,upsample_ms";

struct OptimizeArgs {
    std::string input;
    int scale = 0;
    std::string mode = "fast";
    int window = 3;
    double tau = 30.0 / 255.0;
    int iters = 3;
    bool noJoint = false;
    int threads = 0;
};

void addOptimizeFlags(CLI::App* cmd, OptimizeArgs& a) {
    cmd->add_option("--input", a.input, "guide image (PNG or PPM)")->required();
    cmd->add_option("--scale", a.scale, "upsampling factor, >= 2")->required()->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--mode", a.mode, "pair selection mode")
        ->check(CLI::IsMember({"fast", "exact", "gnu"}));
    cmd->add_option("--window", a.window, "candidate window side, odd >= 3");
    cmd->add_option("--tau", a.tau, "error threshold for downsampling trials");
    cmd->add_option("--iters", a.iters, "max joint optimization sweeps");
    cmd->add_flag("--no-downsample-opt", a.noJoint, "skip joint optimization of the low-res");
    cmd->add_option("--threads", a.threads, "worker threads, 0 = hardware")->check(CLI::Range(0, 4096));
}

struct OptimizeRun {
    glu::JointResult result;
    ImageF32 recon;
    glu::QualityReport quality;
    glu::Mode mode = glu::Mode::Fast;
    json stageTimes;
};

OptimizeRun runOptimization(const OptimizeArgs& a) {
    OptimizeRun r;
    glu::set_num_threads(a.threads);
    r.mode = glu::mode_from_name(a.mode);
    glu::GluConfig cfg;
    cfg.windowSide = a.window;
    cfg.errorThreshold = static_cast<float>(a.tau);
    cfg.maxIterations = a.noJoint ? 0 : a.iters;
    cfg.validate();

    auto t0 = Clock::now();
    const ImageF32 img = glu::load_image(a.input);
    r.stageTimes["load"] = msSince(t0);

    t0 = Clock::now();
    r.result = glu::joint_optimize(img, a.scale, cfg, r.mode);
    r.stageTimes["optimize"] = msSince(t0);

    t0 = Clock::now();
    r.recon = glu::apply_field(r.result.field, r.result.low);
    r.stageTimes["upsample"] = msSince(t0);

    t0 = Clock::now();
    r.quality = glu::quality_report(img, r.recon);
    r.stageTimes["metrics"] = msSince(t0);
    return r;
}

json reportFor(const OptimizeRun& r, int scale) {
    return runReport(scale, glu::mode_name(r.mode), r.result.iterations, r.result.trialsAccepted,
                     r.result.trialsRejected, r.quality.psnrDb, r.quality.ssim, r.stageTimes);
}

int cmdOptimize(const OptimizeArgs& a, const std::string& outGlup, const std::string& outLow,
                int bitDepth) {
    OptimizeRun r = runOptimization(a);
    auto t0 = Clock::now();
    glu::write_glup(outGlup, {r.result.field, r.result.low, !a.noJoint});
    if (!outLow.empty()) glu::save_image(outLow, r.result.low, 16);
    r.stageTimes["write"] = msSince(t0);
    (void)bitDepth;
    std::cout << reportFor(r, a.scale).dump(2) << "\n";
    return 0;
}

int cmdSelfcheck(const OptimizeArgs& a, const std::string& report, const std::string& outImage,
                 const std::string& outGlup, int bitDepth) {
    OptimizeRun r = runOptimization(a);
    auto t0 = Clock::now();
    if (!outImage.empty()) glu::save_image(outImage, r.recon, bitDepth);
    if (!outGlup.empty()) glu::write_glup(outGlup, {r.result.field, r.result.low, !a.noJoint});
    r.stageTimes["write"] = msSince(t0);
    if (report == "csv") {
        const std::string image = std::filesystem::path(a.input).filename().string();
        std::cout << kCsvHeader << "\n"
                  << image << "," << a.scale << "," << methodName(r.mode, !a.noJoint)
                  << ",identity," << fmtNum(r.quality.psnrDb) << "," << fmtNum(r.quality.ssim)
                  << "," << fmtNum(r.stageTimes["optimize"].get<double>()) << ","
                  << fmtNum(r.stageTimes["upsample"].get<double>()) << "\n";
    } else {
        std::cout << reportFor(r, a.scale).dump(2) << "\n";
    }
    return 0;
}

int cmdUpsample(const std::string& glupPath, const std::string& targetLow, const std::string& out,
                const std::string& simop, int bitDepth, int threads) {
    glu::set_num_threads(threads);
    json times;
    auto t0 = Clock::now();
    const glu::GlupFile f = glu::read_glup(glupPath);
    ImageF32 target = targetLow.empty() ? f.low : glu::load_image(targetLow);
    times["load"] = msSince(t0);
    if (target.width != f.field.grid.lowW || target.height != f.field.grid.lowH)
        throw std::invalid_argument(
            "target-low dimensions must be " + std::to_string(f.field.grid.lowW) + "x" +
            std::to_string(f.field.grid.lowH) + ", got " + std::to_string(target.width) + "x" +
            std::to_string(target.height));
    const glu::SimOperator op = glu::parse_operator(simop);
    if (op.kind != glu::SimOperator::Kind::Identity) target = glu::apply_operator(op, target);

    t0 = Clock::now();
    const ImageF32 up = glu::apply_field(f.field, target);
    times["upsample"] = msSince(t0);

    t0 = Clock::now();
    glu::save_image(out, up, bitDepth);
    times["write"] = msSince(t0);
    std::cout << runReport(f.field.grid.scale, glu::mode_name(f.field.mode), 0, 0, 0, nullptr,
                           nullptr, times)
                     .dump(2)
              << "\n";
    return 0;
}

int cmdJbu(const std::string& input, int scale, const std::string& targetLow,
           const std::string& out, const glu::JbuParams& params, int bitDepth, int threads) {
    glu::set_num_threads(threads);
    params.validate();
    json times;
    auto t0 = Clock::now();
    const ImageF32 img = glu::load_image(input);
    times["load"] = msSince(t0);

    glu::GridSpec grid;
    t0 = Clock::now();
    const ImageF32 low = glu::grid_downsample(img, scale, &grid);
    const ImageF32 target = targetLow.empty() ? low : glu::load_image(targetLow);
    times["downsample"] = msSince(t0);

    t0 = Clock::now();
    const ImageF32 up = glu::jbu_upsample(img, low, target, grid, params);
    times["upsample"] = msSince(t0);

    json psnrDb = nullptr;
    json ssimVal = nullptr;
    if (targetLow.empty()) {
        t0 = Clock::now();
        const glu::QualityReport q = glu::quality_report(img, up);
        times["metrics"] = msSince(t0);
        psnrDb = q.psnrDb;
        ssimVal = q.ssim;
    }
    if (!out.empty()) {
        t0 = Clock::now();
        glu::save_image(out, up, bitDepth);
        times["write"] = msSince(t0);
    }
    json rep = runReport(scale, "jbu", 0, 0, 0, psnrDb, ssimVal, times);
    char desc[96];
    std::snprintf(desc, sizeof desc, "%dx%d, sigma_d=%g, sigma_r=%g", params.window, params.window,
                  params.sigmaD, params.sigmaR);
    rep["params"] = desc;
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmdMetrics(const std::string& reference, const std::string& test) {
    const ImageF32 ref = glu::load_image(reference);
    const ImageF32 tst = glu::load_image(test);
    const glu::QualityReport q = glu::quality_report(ref, tst);
    std::cout << json{{"mse", q.mse}, {"psnr_db", q.psnrDb}, {"ssim", q.ssim}}.dump(2) << "\n";
    return 0;
}

struct BenchRow {
    bool ok = false;
    double psnrDb = 0, ssimVal = 0, optMs = 0, upsMs = 0;
};

BenchRow benchRow(const ImageF32& img, int scale, const std::string& method,
                  const glu::SimOperator& op) {
    BenchRow row;
    const bool isIdentity = op.kind == glu::SimOperator::Kind::Identity;
    const ImageF32 reference = isIdentity ? img : glu::apply_operator(op, img);
    const glu::GluConfig cfg;
    ImageF32 up;
    if (method == "glu" || method == "glu-minus" || method == "gnu") {
        glu::GluConfig c = cfg;
        glu::Mode mode = glu::Mode::Fast;
        if (method == "glu-minus") c.maxIterations = 0;
        if (method == "gnu") {
            c.maxIterations = 0;
            mode = glu::Mode::Gnu;
        }
        auto t0 = Clock::now();
        glu::JointResult r = glu::joint_optimize(img, scale, c, mode);
        row.optMs = msSince(t0);
        const ImageF32 target = isIdentity ? r.low : glu::apply_operator(op, r.low);
        t0 = Clock::now();
        up = glu::apply_field(r.field, target);
        row.upsMs = msSince(t0);
    } else {
        glu::GridSpec grid;
        auto t0 = Clock::now();
        const ImageF32 low = glu::grid_downsample(img, scale, &grid);
        row.optMs = msSince(t0);
        const ImageF32 target = isIdentity ? low : glu::apply_operator(op, low);
        t0 = Clock::now();
        if (method == "jbu")
            up = glu::jbu_upsample(img, low, target, grid, glu::JbuParams{});
        else if (method == "nearest")
            up = glu::nearest_upsample(target, grid);
        else if (method == "bilinear")
            up = glu::bilinear_upsample(target, grid);
        else
            throw std::invalid_argument("unknown method: " + method);
        row.upsMs = msSince(t0);
    }
    row.psnrDb = glu::psnr(reference, up);
    row.ssimVal = glu::ssim(reference, up);
    row.ok = true;
    return row;
}

int cmdBench(int images, int size, std::vector<int> scales, std::vector<std::string> methods,
             std::vector<std::string> operators, uint64_t seed, int threads) {
    glu::set_num_threads(threads);
    if (images < 1) throw std::invalid_argument("bench: --images must be >= 1");
    if (scales.empty()) scales = {8, 16};
    if (methods.empty()) methods = {"glu", "jbu"};
    if (operators.empty()) operators = {"identity"};
    for (int s : scales)
        if (s < 2 || s >= size)
            throw std::invalid_argument("bench: scales must satisfy 2 <= scale < size");
    const std::vector<std::string> known = {"glu", "glu-minus", "gnu", "jbu", "nearest", "bilinear"};
    for (const auto& m : methods)
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw std::invalid_argument("bench: unknown method: " + m);
    std::vector<glu::SimOperator> ops;
    for (const auto& text : operators) ops.push_back(glu::parse_operator(text));

    std::cout << kCsvHeader << "\n";
    for (int i = 0; i < images; ++i) {
        const std::string name = "mix" + std::to_string(i + 1);
        const ImageF32 img = glu::synth_mixture(size, size, seed + static_cast<uint64_t>(i));
        for (int scale : scales)
            for (const auto& method : methods)
                for (const auto& op : ops) {
                    BenchRow row;
                    try {
                        row = benchRow(img, scale, method, op);
                    } catch (const std::exception& e) {
                        std::cerr << name << "/" << scale << "/" << method << "/" << op.name
                                  << ": " << e.what() << "\n";
                    }
                    std::cout << name << "," << scale << "," << method << "," << op.name << ",";
                    if (row.ok)
                        std::cout << fmtNum(row.psnrDb) << "," << fmtNum(row.ssimVal) << ","
                                  << fmtNum(row.optMs) << "," << fmtNum(row.upsMs) << "\n";
                    else
                        std::cout << "error,error,0,0\n";
                }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Guided linear upsampling: reconstruct a full-resolution edit from a "
                 "low-resolution one via optimized two-point interpolation"};
    app.require_subcommand(1);

    OptimizeArgs optArgs;
    std::string optOutGlup, optOutLow;
    auto* opt = app.add_subcommand("optimize",
                                   "optimize interpolation parameters and the low-res image");
    addOptimizeFlags(opt, optArgs);
    opt->add_option("--out-glup", optOutGlup, "parameter file to write")->required();
    opt->add_option("--out-low", optOutLow, "optimized low-res image (16-bit PNG)");

    OptimizeArgs selfArgs;
    std::string selfReport = "json", selfOut, selfOutGlup;
    int selfBitDepth = 8;
    auto* self = app.add_subcommand("selfcheck",
                                    "optimize, reconstruct the input itself and report quality");
    addOptimizeFlags(self, selfArgs);
    self->add_option("--report", selfReport, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    self->add_option("--out", selfOut, "write the reconstructed image");
    self->add_option("--out-glup", selfOutGlup, "also write the parameter file");
    self->add_option("--bit-depth", selfBitDepth, "PNG bit depth for --out")
        ->check(CLI::IsMember({8, 16}));

    std::string upGlup, upTargetLow, upOut, upSimop = "identity";
    int upBitDepth = 8, upThreads = 0;
    auto* ups = app.add_subcommand("upsample", "apply stored parameters to a low-res target");
    ups->add_option("--glup", upGlup, "parameter file from optimize")->required();
    ups->add_option("--target-low", upTargetLow, "edited low-res image; default: embedded one");
    ups->add_option("--out", upOut, "output image path")->required();
    ups->add_option("--simop", upSimop, "apply a simulated operator to the target first");
    ups->add_option("--bit-depth", upBitDepth, "PNG bit depth")->check(CLI::IsMember({8, 16}));
    ups->add_option("--threads", upThreads, "worker threads, 0 = hardware")
        ->check(CLI::Range(0, 4096));

    std::string jbuInput, jbuTargetLow, jbuOut;
    int jbuScale = 0, jbuBitDepth = 8, jbuThreads = 0;
    glu::JbuParams jbuParams;
    auto* jbu = app.add_subcommand("jbu", "joint bilateral upsampling baseline");
    jbu->add_option("--input", jbuInput, "guide image")->required();
    jbu->add_option("--scale", jbuScale, "upsampling factor, >= 2")->required()->check(CLI::Range(2, 1 << 20));
    jbu->add_option("--target-low", jbuTargetLow, "edited low-res image; default: downsampled guide");
    jbu->add_option("--out", jbuOut, "output image path");
    jbu->add_option("--window", jbuParams.window, "filter window in low-res cells, odd");
    jbu->add_option("--sigma-d", jbuParams.sigmaD, "spatial falloff in cell units");
    jbu->add_option("--sigma-r", jbuParams.sigmaR, "range falloff on guide distance");
    jbu->add_option("--bit-depth", jbuBitDepth, "PNG bit depth")->check(CLI::IsMember({8, 16}));
    jbu->add_option("--threads", jbuThreads, "worker threads, 0 = hardware")
        ->check(CLI::Range(0, 4096));

    std::string metRef, metTest;
    auto* met = app.add_subcommand("metrics", "PSNR and SSIM between two images");
    met->add_option("--reference", metRef, "reference image")->required();
    met->add_option("--test", metTest, "test image")->required();

    int benchImages = 3, benchSize = 256, benchThreads = 0;
    uint64_t benchSeed = 1;
    std::vector<int> benchScales;
    std::vector<std::string> benchMethods, benchOperators;
    auto* ben = app.add_subcommand("bench", "quality/timing sweep over synthetic images (CSV)");
    ben->add_option("--images", benchImages, "number of seeded synthetic images");
    ben->add_option("--size", benchSize, "synthetic image side")->check(CLI::Range(16, 1 << 14));
    ben->add_option("--scales", benchScales, "scales to sweep")->delimiter(',');
    ben->add_option("--methods", benchMethods,
                    "methods: glu, glu-minus, gnu, jbu, nearest, bilinear")
        ->delimiter(',');
    ben->add_option("--operators", benchOperators, "simulated operators (space separated)");
    ben->add_option("--seed", benchSeed, "base seed");
    ben->add_option("--threads", benchThreads, "worker threads, 0 = hardware")
        ->check(CLI::Range(0, 4096));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (opt->parsed()) return cmdOptimize(optArgs, optOutGlup, optOutLow, 8);
        if (self->parsed())
            return cmdSelfcheck(selfArgs, selfReport, selfOut, selfOutGlup, selfBitDepth);
        if (ups->parsed())
            return cmdUpsample(upGlup, upTargetLow, upOut, upSimop, upBitDepth, upThreads);
        if (jbu->parsed())
            return cmdJbu(jbuInput, jbuScale, jbuTargetLow, jbuOut, jbuParams, jbuBitDepth,
                          jbuThreads);
        if (met->parsed()) return cmdMetrics(metRef, metTest);
        if (ben->parsed())
            return cmdBench(benchImages, benchSize, benchScales, benchMethods, benchOperators,
                            benchSeed, benchThreads);
    } catch (const glu::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const glu::FormatError& e) {
        std::cerr << "format error [" << e.field << "]: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
