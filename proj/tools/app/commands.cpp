#include "commands.hpp"

#include "affrigid/affrigid.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace affrigid::app {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Runs body(i) for i < n on up to `jobs` threads; body must not throw.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            body(i);
    };
    const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
}

std::string describe_error(const std::exception& e)
{
    if (dynamic_cast<const CapacityError*>(&e))
        return std::string("capacity error: ") + e.what();
    if (dynamic_cast<const NumericalError*>(&e))
        return std::string("numerical error: ") + e.what();
    return std::string("invalid request: ") + e.what();
}

/// Per-channel bookkeeping for the manifest; an empty error means success.
struct Job {
    std::string channel;
    std::string error;
    double seconds = 0.0;
};

/// Unwritable output paths are configuration errors.
void write_file(const std::filesystem::path& path, const std::string& content, const std::string& field)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw UsageError(field + ": cannot write '" + path.string() + "'");
    os << content;
    if (!os)
        throw UsageError(field + ": write to '" + path.string() + "' failed");
}

std::filesystem::path resolve(const Context& ctx, const std::string& name)
{
    const std::filesystem::path p(name);
    return p.is_absolute() ? p : ctx.output_dir / p;
}

std::string planar_name(int m, int n) { return std::to_string(m) + " " + std::to_string(n); }

std::string spatial_name(const RepLabel& a, const RepLabel& b) { return label_text(a) + " " + label_text(b); }

std::vector<std::string> channel_names(const RunConfig& c)
{
    std::vector<std::string> out;
    if (c.dimension() == 2)
        for (const auto& [m, n] : c.planar_channels)
            out.push_back(planar_name(m, n));
    else
        for (const auto& [a, b] : c.spatial_channels)
            out.push_back(spatial_name(a, b));
    return out;
}

/// Records timings and errors of one command and writes the manifest.
int finish(const std::string& command, const RunConfig& config, const Context& ctx,
           const std::vector<Job>& jobs, const json& outputs, Clock::time_point t0)
{
    json errors = json::array(), timings = json::array();
    for (const auto& j : jobs) {
        timings.push_back({{"channel", j.channel}, {"seconds", j.seconds}});
        if (!j.error.empty()) {
            errors.push_back({{"channel", j.channel}, {"error", j.error}});
            *ctx.err << "channel " << j.channel << ": " << j.error << '\n';
        }
    }
    json manifest;
    manifest["tool"] = "affrigid";
    manifest["version"] = version();
    manifest["command"] = command;
    manifest["argv"] = ctx.argv;
    manifest["jobs"] = ctx.jobs;
    manifest["config"] = to_json(config);
    manifest["outputs"] = outputs;
    manifest["status"] = errors.empty() ? "ok" : "partial";
    manifest["errors"] = errors;
    manifest["timings"] = {{"total_seconds", seconds_since(t0)}, {"channels", timings}};
    write_file(resolve(ctx, config.outputs.manifest), manifest.dump(2) + "\n", "outputs.manifest");
    if (!errors.empty())
        *ctx.err << errors.size() << " of " << jobs.size() << " channels failed\n";
    return errors.empty() ? kOk : kPartial;
}

LanczosOptions lanczos_options(const RunConfig& c)
{
    LanczosOptions opt;
    opt.seed = c.seed;
    return opt;
}

NdGridSpec refined_grid(NdGridSpec g, int level)
{
    // halving the spacing keeps every coarse node: (count + 1) elements per axis double
    for (int a = 0; a < 3; ++a)
        g.count[a] = (g.count[a] + 1) * (1 << level) - 1;
    return g;
}

void require_planar(const RunConfig& c, const char* command)
{
    if (c.dimension() != 2)
        throw UsageError(std::string("dimension: ") + command + " needs dimension 2");
}

} // namespace

int command_run(const RunConfig& config, const Context& ctx)
{
    const auto t0 = Clock::now();
    const auto names = channel_names(config);
    const std::size_t n = names.size();
    std::vector<Job> jobs(n);
    std::vector<std::vector<SpectrumResult>> results(n);
    std::vector<std::string> descriptors(n);

    parallel_for(n, ctx.jobs, [&](std::size_t i) {
        const auto start = Clock::now();
        jobs[i].channel = names[i];
        try {
            std::ostringstream desc;
            if (config.dimension() == 2) {
                const auto [m, nn] = config.planar_channels[i];
                const auto op = assemble_2d_channel(config.model, config.params, m, nn, config.grid,
                                                    config.v_dil, config.v_sh);
                results[i].push_back(solve_1d(op, config.count, config.form));
                if (config.q_sector) {
                    SpectrumResult q = solve_sector(op.q_sector, op.q_h, config.count, config.form);
                    q.model = to_string(op.kind);
                    q.label1 = m;
                    q.label2 = nn;
                    q.sector = op.kind == ModelKind::DAlembert ? "z" : "q";
                    results[i].push_back(std::move(q));
                }
                if (config.outputs.descriptors)
                    export_descriptor(desc, op);
            } else {
                const auto& [a, b] = config.spatial_channels[i];
                const auto op = assemble_nd_channel(config.model, config.params, a, b, config.nd_grid,
                                                    config.v_dil, config.limits);
                results[i].push_back(solve_nd(op, config.count, lanczos_options(config)));
                if (config.outputs.descriptors)
                    export_descriptor(desc, op);
            }
            descriptors[i] = desc.str();
        } catch (const std::exception& e) {
            results[i].clear();
            jobs[i].error = describe_error(e);
        }
        jobs[i].seconds = seconds_since(start);
    });

    std::vector<SpectrumResult> flat;
    for (auto& r : results)
        for (auto& s : r)
            flat.push_back(std::move(s));
    std::ostringstream table;
    write_spectrum_table(table, flat, config.dimension() == 2);
    write_file(resolve(ctx, config.outputs.spectrum), table.str(), "outputs.spectrum");

    json outputs = {{"spectrum", config.outputs.spectrum}};
    if (config.outputs.descriptors) {
        json files = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            if (descriptors[i].empty())
                continue;
            std::string stem = names[i];
            std::replace(stem.begin(), stem.end(), ' ', '_');
            std::replace(stem.begin(), stem.end(), '/', '-');
            const std::string file = "descriptors/channel_" + stem + ".txt";
            write_file(resolve(ctx, file), descriptors[i], "outputs.descriptors");
            files.push_back(file);
        }
        outputs["descriptors"] = files;
    }
    *ctx.out << "wrote " << flat.size() << " spectra for " << n << " channels to "
             << resolve(ctx, config.outputs.spectrum).string() << '\n';
    return finish("run", config, ctx, jobs, outputs, t0);
}

int command_scan(const RunConfig& config, const Context& ctx)
{
    require_planar(config, "scan-threshold");
    const auto t0 = Clock::now();
    const std::size_t n = config.planar_channels.size();
    std::vector<Job> jobs(n);
    std::vector<ScanRow> rows(n);

    parallel_for(n, ctx.jobs, [&](std::size_t i) {
        const auto start = Clock::now();
        const auto [m, nn] = config.planar_channels[i];
        jobs[i].channel = planar_name(m, nn);
        ScanRow& row = rows[i];
        row.model = to_string(config.model);
        row.m = m;
        row.n = nn;
        row.classification = classify_channel(m, nn);
        try {
            const auto op = assemble_2d_channel(config.model, config.params, m, nn, config.grid,
                                                config.v_dil, config.v_sh);
            const auto r = solve_1d(op, config.count, config.form);
            row.ground = r.eigenvalues.front();
            row.threshold = r.threshold;
            row.bound_count = r.bound_count;
            row.X = r.X;
            row.h = r.h;
        } catch (const std::exception& e) {
            jobs[i].error = describe_error(e);
            row.ground = row.threshold = row.X = row.h = std::numeric_limits<double>::quiet_NaN();
            row.error = "failed";
        }
        jobs[i].seconds = seconds_since(start);
    });

    std::ostringstream table;
    write_scan_table(table, rows);
    write_file(resolve(ctx, config.outputs.scan), table.str(), "outputs.scan");
    *ctx.out << "wrote " << n << " scan rows to " << resolve(ctx, config.outputs.scan).string() << '\n';
    return finish("scan-threshold", config, ctx, jobs, {{"scan", config.outputs.scan}}, t0);
}

int command_convergence(const RunConfig& config, const Context& ctx)
{
    const auto t0 = Clock::now();
    const auto names = channel_names(config);
    const std::size_t n = names.size();
    std::vector<Job> jobs(n);
    std::vector<std::string> blocks(n);

    parallel_for(n, ctx.jobs, [&](std::size_t i) {
        const auto start = Clock::now();
        jobs[i].channel = names[i];
        try {
            std::ostringstream os;
            ConvergenceStudy study;
            if (config.dimension() == 2) {
                const auto [m, nn] = config.planar_channels[i];
                const auto op = assemble_2d_channel(config.model, config.params, m, nn, config.grid,
                                                    config.v_dil, config.v_sh);
                study = convergence_study(op.x_sector, op.h, config.levels, config.count, config.form);
                os << "# " << to_string(config.model) << " m " << m << " n " << nn << " sector "
                   << (op.kind == ModelKind::DAlembert ? "y" : "x") << " form " << to_string(config.form);
            } else {
                const auto& [a, b] = config.spatial_channels[i];
                const auto solver = [&](int level) {
                    const auto op = assemble_nd_channel(config.model, config.params, a, b,
                                                        refined_grid(config.nd_grid, level), config.v_dil,
                                                        config.limits);
                    return solve_nd(op, config.count, lanczos_options(config)).eigenvalues;
                };
                const auto coarse = assemble_nd_channel(config.model, config.params, a, b, config.nd_grid,
                                                        config.v_dil, config.limits);
                const double h0 = std::max({coarse.spacing(0), coarse.spacing(1), coarse.spacing(2)});
                study = convergence_study(solver, h0, config.levels);
                os << "# " << to_string(config.model) << " s " << label_text(a) << " j " << label_text(b)
                   << " sector q";
            }
            os << " accepted " << (study.accepted() ? 1 : 0) << '\n';
            write_convergence_table(os, study);
            blocks[i] = os.str();
        } catch (const std::exception& e) {
            jobs[i].error = describe_error(e);
        }
        jobs[i].seconds = seconds_since(start);
    });

    std::string text;
    for (const auto& b : blocks)
        text += b;
    write_file(resolve(ctx, config.outputs.convergence), text, "outputs.convergence");
    *ctx.out << "wrote convergence studies for " << n << " channels to "
             << resolve(ctx, config.outputs.convergence).string() << '\n';
    return finish("convergence", config, ctx, jobs, {{"convergence", config.outputs.convergence}}, t0);
}

} // namespace affrigid::app
