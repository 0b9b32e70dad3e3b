#include "commands.hpp"

#include "sawkit_cli/cli.hpp"

#include "sawkit/ingest/csv_sweep.hpp"
#include "sawkit/ingest/touchstone.hpp"
#include "sawkit/numerics/units.hpp"
#include "sawkit/qdyn/rabi.hpp"
#include "sawkit/qdyn/spectra.hpp"
#include "sawkit/specanalysis/cavity_report.hpp"
#include "sawkit/spinphonon/spinphonon.hpp"
#include "sawkit/timedomain/echoes.hpp"
#include "sawkit/timedomain/impulse.hpp"
#include "sawkit/timedomain/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace sawkit::cli
{

void Context::emit(const std::string& name, std::string_view contents) const
{
    write_file_atomic(path(name), contents);
}

void Context::emit_plot(const std::string& name, const numerics::Series& series, std::string_view title) const
{
    if(plot)
        emit(name, svg_line_plot(series, title));
}

namespace
{

using ingest::NetworkSweep;
using ingest::PortPair;

bool is_csv(const std::filesystem::path& p)
{
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".csv";
}

struct LoadedSweep
{
    NetworkSweep sweep;
    ingest::SweepMeta meta;
};

LoadedSweep load_sweep(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    if(!f)
        throw UsageError("cannot open input file " + p.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    try
    {
        LoadedSweep s;
        if(is_csv(p))
            s.sweep = ingest::parse_csv_sweep(text);
        else
        {
            s.sweep = ingest::parse_touchstone(text);
            s.meta = ingest::parse_touchstone_meta(text);
        }
        s.sweep.label = p.filename().string();
        return s;
    }
    catch(const FormatError& e)
    {
        throw FormatError(p.string() + ": " + e.what());
    }
}

template <class Enum>
Enum choice(const Settings& s, std::string_view name, std::initializer_list<std::pair<std::string_view, Enum>> options)
{
    const std::string v = s.text(name);
    std::string names;
    for(const auto& [key, value] : options)
    {
        if(v == key)
            return value;
        names += (names.empty() ? "" : "|") + std::string(key);
    }
    throw UsageError("--" + std::string(name) + ": expected " + names + ", got '" + v + "'");
}

PortPair pair_option(const Settings& s, std::string_view name)
{
    const auto p = ingest::parse_port_pair(s.text(name));
    if(!p)
        throw UsageError("--" + std::string(name) + ": not a port pair: " + s.text(name));
    return *p;
}

double positive(const Settings& s, std::string_view name)
{
    const double v = s.number(name);
    if(!(v > 0) || !std::isfinite(v))
        throw UsageError("--" + std::string(name) + " must be positive and finite");
    return v;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n)
{
    std::vector<double> g(n);
    for(std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

std::vector<double> centred_grid(double centre, double span, std::size_t n)
{
    std::vector<double> g(n);
    for(std::size_t i = 0; i < n; ++i)
        g[i] = centre + span * (static_cast<double>(i) / static_cast<double>(n - 1) - 0.5);
    return g;
}

std::size_t point_count(const Settings& s, std::string_view name, long long min)
{
    const auto n = s.integer(name);
    if(n < min)
        throw UsageError("--" + std::string(name) + " must be at least " + std::to_string(min));
    return static_cast<std::size_t>(n);
}

numerics::Series magnitude_db(const NetworkSweep& sweep, PortPair pair)
{
    numerics::Series s;
    s.x = sweep.freqs;
    s.x_unit = "Hz";
    s.y_unit = "|" + std::string(ingest::to_string(pair)) + "| (dB)";
    for(const auto& v : sweep.at(pair))
        s.y.push_back(20 * std::log10(std::max(std::abs(v), 1e-12)));
    return s;
}

void print(const Context& ctx, const KeyValueBlock& kv)
{
    ctx.out << kv.to_string();
}

Command& add(std::vector<std::unique_ptr<Command>>& all, CLI::App* app)
{
    auto c = std::make_unique<Command>();
    c->app = app;
    c->settings = std::make_unique<Settings>(*app);
    all.push_back(std::move(c));
    return *all.back();
}

// cavity ---------------------------------------------------------------

void register_cavity(CLI::App& root, std::vector<std::unique_ptr<Command>>& all)
{
    auto& c = add(all, root.add_subcommand("cavity", "Mode table, FSR, L_p, r_s, Q budget and finesse of a sweep"));
    auto& s = *c.settings;
    s.positional("input", "Touchstone .s2p or sweep .csv");
    s.option("d", "IDT separation, m (default: file metadata)");
    s.option("lambda0", "acoustic wavelength, m (default: file metadata)");
    s.option("n-mirror", "electrodes per reflector", "40");
    s.option("vg", "group velocity, m/s", "6161");
    s.option("source", "trace: auto|s11|s21", "auto");
    s.option("alpha-db-mm", "propagation loss, dB/mm (enables Q_propagation)");
    s.option("coupling", "reflection coupling regime: under|over", "under");
    s.option("prominence", "minimum peak prominence, fraction of the trace range", "0.1");
    s.option("min-spacing", "minimum mode spacing, Hz (0: five grid steps)", "0");
    s.option("window-fraction", "fit half-window in units of the mode spacing", "0.4");

    c.run = [](const Context& ctx, const Settings& s) {
        const auto in = load_sweep(s.text("input"));
        specanalysis::CavityGeometry geom;
        const auto d = s.maybe_number("d");
        const auto lambda0 = s.maybe_number("lambda0");
        if(!d && !in.meta.device_length_m)
            throw UsageError("geometry: --d is required (no device length in the file)");
        if(!lambda0 && !in.meta.idt_pitch_m)
            throw UsageError("geometry: --lambda0 is required (no IDT pitch in the file)");
        geom.d = d ? *d : *in.meta.device_length_m;
        geom.lambda0 = lambda0 ? *lambda0 : *in.meta.idt_pitch_m;
        geom.n_mirror = static_cast<int>(s.integer("n-mirror"));
        geom.v_g = s.number("vg");
        try
        {
            geom.validate();
        }
        catch(const ArgumentError& e)
        {
            throw UsageError(std::string("geometry: ") + e.what());
        }

        specanalysis::CavityReportOptions opt;
        opt.source = choice<specanalysis::TraceSource>(s, "source",
                                                       {{"auto", specanalysis::TraceSource::automatic},
                                                        {"s11", specanalysis::TraceSource::s11},
                                                        {"s21", specanalysis::TraceSource::s21}});
        opt.coupling = choice<specanalysis::CouplingRegime>(s, "coupling",
                                                            {{"under", specanalysis::CouplingRegime::undercoupled},
                                                             {"over", specanalysis::CouplingRegime::overcoupled}});
        opt.alpha_db_per_mm = s.maybe_number("alpha-db-mm");
        opt.min_prominence_fraction = s.number("prominence");
        opt.min_spacing_hz = s.number("min-spacing");
        opt.window_fraction = s.number("window-fraction");

        const auto report = specanalysis::cavity_report(in.sweep, geom, opt);
        const auto summary = specanalysis::cavity_summary(report);
        ctx.emit("cavity_modes.csv", specanalysis::write_cavity_csv(report));
        ctx.emit("cavity_summary.txt", summary.to_string());
        ctx.emit_plot("cavity_trace.svg", magnitude_db(in.sweep, report.source), "cavity trace " + in.sweep.label);
        print(ctx, summary);
    };
}

// echo-loss ------------------------------------------------------------

void register_echo_loss(CLI::App& root, std::vector<std::unique_ptr<Command>>& all)
{
    auto& c = add(all, root.add_subcommand("echo-loss", "Propagation loss from the decay of the echo train"));
    auto& s = *c.settings;
    s.positional("input", "Touchstone .s2p or sweep .csv");
    s.option("length", "propagation length L, m");
    s.option("vg", "group velocity, m/s", "6161");
    auto* r = s.option("known-r", "mirror power reflection R");
    auto* a = s.option("known-alpha", "power attenuation, dB/mm");
    r->excludes(a);
    s.option("pair", "port pair", "s21");
    s.option("n-max", "highest echo index searched", "16");
    s.option("window", "frequency window: none|tukey (the IDT passband already tapers the band)", "none");
    s.option("taper", "Tukey taper fraction per edge", "0.1");
    s.option("gate-start", "discard the response before this delay, s (default: round trip / 4; 0 disables)");
    s.option("noise-factor", "detectable above this multiple of the median |h|", "3");
    s.option("dynamic-range-db", "detectable within this range of echo 0", "60");

    c.run = [](const Context& ctx, const Settings& s) {
        const bool cli_r = s.on_command_line("known-r"), cli_a = s.on_command_line("known-alpha");
        bool use_r = s.has("known-r"), use_a = s.has("known-alpha");
        if(cli_r || cli_a)
        {
            use_r = cli_r;
            use_a = cli_a;
        }
        if(use_r == use_a)
            throw UsageError("give exactly one of --known-r and --known-alpha");

        const double L = positive(s, "length");
        const double vg = positive(s, "vg");
        const auto in = load_sweep(s.text("input"));
        const PortPair pair = pair_option(s, "pair");
        timedomain::WindowSpec window;
        window.kind = choice<timedomain::Window>(s, "window",
                                                 {{"tukey", timedomain::Window::raised_cosine},
                                                  {"none", timedomain::Window::none}});
        window.taper_fraction = s.number("taper");
        timedomain::EchoDetectOptions detect;
        detect.noise_factor = s.number("noise-factor");
        detect.dynamic_range_db = s.number("dynamic-range-db");

        timedomain::DecayConstraint known = timedomain::KnownReflection{0};
        if(use_r)
            known = timedomain::KnownReflection{s.number("known-r")};
        else
            known = timedomain::KnownAttenuation{
                numerics::db_convert(s.number("known-alpha"), numerics::DbMode::db_per_mm_to_per_m_power)};

        const double rt = timedomain::round_trip_time(L, vg);
        const double gate_start = s.has("gate-start") ? s.number("gate-start") : rt / 4;
        NetworkSweep sweep = in.sweep;
        if(gate_start > 0)
        {
            if(!sweep.is_uniform())
                throw GridError("time gating needs a uniform frequency grid");
            sweep = timedomain::time_gate(sweep, gate_start, 1 / sweep.step());
        }
        const auto ir = timedomain::impulse_response(sweep, window, pair);
        const auto train = timedomain::detect_echoes(ir, rt, static_cast<int>(s.integer("n-max")), detect);
        const auto fit = timedomain::fit_echo_decay(train, L, known);

        auto summary = timedomain::loss_summary(fit.model);
        summary.set("round_trip_s", rt);
        summary.set("echoes_used", static_cast<long long>(fit.echoes_used));
        summary.set("echoes_detectable", static_cast<long long>(train.detectable_count()));
        summary.set("noise_floor", train.noise_floor);
        ctx.emit("echo_table.csv", timedomain::write_echo_csv(train));
        ctx.emit("loss_summary.txt", summary.to_string());
        if(ctx.plot)
        {
            numerics::Series h;
            h.x_unit = "delay (s)";
            h.y_unit = "|h| (dB)";
            for(std::size_t i = 0; i < ir.tau.size() && ir.tau[i] <= (train.peaks.size() + 1) * rt; ++i)
            {
                h.x.push_back(ir.tau[i]);
                h.y.push_back(20 * std::log10(std::max(std::abs(ir.h[i]), 1e-12)));
            }
            ctx.emit_plot("impulse.svg", h, "impulse response " + in.sweep.label);
        }
        print(ctx, summary);
    };
}

// gate -----------------------------------------------------------------

void write_sweep(const Context& ctx, const std::string& name, const NetworkSweep& sweep, const Settings& s,
                 const ingest::SweepMeta* meta)
{
    if(is_csv(name))
    {
        std::vector<PortPair> pairs;
        for(const auto& [p, v] : sweep.s)
            pairs.push_back(p);
        const auto rep = choice<ingest::CsvRepresentation>(
            s, "csv-format", {{"ri", ingest::CsvRepresentation::ri}, {"db", ingest::CsvRepresentation::db_phase}});
        ctx.emit(name, ingest::write_csv(sweep, pairs, rep));
        return;
    }
    ingest::TouchstoneWriteOptions opt;
    opt.format = choice<ingest::TouchstoneFormat>(s, "format",
                                                  {{"ri", ingest::TouchstoneFormat::ri},
                                                   {"ma", ingest::TouchstoneFormat::ma},
                                                   {"db", ingest::TouchstoneFormat::db}});
    opt.unit = choice<ingest::FrequencyUnit>(s, "unit",
                                             {{"hz", ingest::FrequencyUnit::hz},
                                              {"khz", ingest::FrequencyUnit::khz},
                                              {"mhz", ingest::FrequencyUnit::mhz},
                                              {"ghz", ingest::FrequencyUnit::ghz}});
    opt.meta = meta;
    ctx.emit(name, ingest::write_touchstone(sweep, opt));
}

void add_writer_options(Settings& s)
{
    s.option("format", "Touchstone data format: ri|ma|db", "ri");
    s.option("unit", "Touchstone frequency unit: hz|khz|mhz|ghz", "hz");
    s.option("csv-format", "CSV columns: ri|db", "ri");
}

void register_gate(CLI::App& root, std::vector<std::unique_ptr<Command>>& all)
{
    auto& c = add(all, root.add_subcommand("gate", "Keep only the impulse response inside a delay window"));
    auto& s = *c.settings;
    s.positional("input", "Touchstone .s2p or sweep .csv");
    s.option("start", "gate start, s");
    s.option("stop", "gate stop, s (default: end of the record)");
    s.option("output", "output file (.s2p or .csv)", "gated.s2p");
    add_writer_options(s);

    c.run = [](const Context& ctx, const Settings& s) {
        const auto in = load_sweep(s.text("input"));
        if(!in.sweep.is_uniform())
            throw GridError("time gating needs a uniform frequency grid");
        const double start = s.number("start");
        const double stop = s.has("stop") ? s.number("stop") : 1 / in.sweep.step();
        if(!(stop > start))
            throw UsageError("--stop must exceed --start");
        const auto gated = timedomain::time_gate(in.sweep, start, stop);
        const std::string name = s.text("output");
        write_sweep(ctx, name, gated, s, &in.meta);
        KeyValueBlock kv;
        kv.set("gate_start_s", start);
        kv.set("gate_stop_s", stop);
        kv.set("points", static_cast<long long>(gated.freqs.size()));
        kv.set("output", ctx.path(name).string());
        print(ctx, kv);
    };
}

// budget ---------------------------------------------------------------

void register_budget(CLI::App& root, std::vector<std::unique_ptr<Command>>& all)
{
    auto& c = add(all, root.add_subcommand("budget", "RF power to phonon number to sqrt(n) g"));
    auto& s = *c.settings;
    auto* dbm = s.option("power-dbm", "RF drive power, dBm", "0");
    auto* w = s.option("power-w", "RF drive power, W (instead of --power-dbm)");
    w->excludes(dbm);
    s.option("loss", "loss chain, comma-separated dB entries (<= 0)", "-10,-10");
    s.option("g", "single-phonon coupling rates, comma-separated Hz", "30k,70k");
    s.option("f0", "mode frequency, Hz", "3.8G");
    s.option("t0", "pulse length, s", "20n");
    s.option("r", "SiV distance from the beam axis, m", "0");
    s.option("z", "SiV distance from the focus, m", "0");
    s.option("w0", "beam waist, m", "6.8u");
    s.option("beam-lambda", "acoustic wavelength of the beam, m", "1.1u");

    c.run = [](const Context& ctx, const Settings& s) {
        const double f0 = positive(s, "f0"), t0 = positive(s, "t0");
        const auto losses = s.numbers("loss");
        for(double l : losses)
            if(!(l <= 0) || !std::isfinite(l))
                throw UsageError("--loss: entries must be finite and <= 0 dB, got " + format_double(l));
        double p_rf = 0;
        if(s.on_command_line("power-w") || (!s.on_command_line("power-dbm") && s.has("power-w")))
            p_rf = s.number("power-w");
        else
            p_rf = numerics::dbm_to_watts(s.number("power-dbm"));
        if(!(p_rf >= 0) || !std::isfinite(p_rf))
            throw UsageError("RF power must be finite and non-negative");
        const auto gs = s.numbers("g");
        if(gs.empty())
            throw UsageError("--g: give at least one coupling rate");
        for(double g : gs)
            if(!(g >= 0) || !std::isfinite(g))
                throw UsageError("--g: rates must be finite and non-negative");

        spinphonon::GaussianBeam beam;
        beam.w0 = positive(s, "w0");
        beam.lambda = positive(s, "beam-lambda");
        const double p0 = spinphonon::single_phonon_power(f0, t0);
        const double n = spinphonon::phonon_number(p_rf, losses, p0);
        const double factor = spinphonon::beam_profile(beam, s.number("r"), s.number("z"));

        KeyValueBlock kv;
        kv.set("p_rf_w", p_rf);
        std::string chain;
        double total = 0;
        for(double l : losses)
        {
            chain += (chain.empty() ? "" : ",") + format_double(l);
            total += l;
        }
        kv.set("loss_chain_db", chain.empty() ? std::string("none") : chain);
        kv.set("p_acoustic_w", n * p0);
        kv.set("f0_hz", f0);
        kv.set("t0_s", t0);
        kv.set("p0_w", p0);
        kv.set("n_phonons", n);
        kv.set("beam_factor", factor);
        for(std::size_t i = 0; i < gs.size(); ++i)
        {
            const std::string k = std::to_string(i + 1);
            kv.set("g_hz_" + k, gs[i]);
            kv.set("rabi_hz_" + k, spinphonon::rabi_from_phonons(n, gs[i]) * factor);
        }
        ctx.emit("budget.txt", kv.to_string());
        print(ctx, kv);
    };
}

// coupling -------------------------------------------------------------

void register_coupling(CLI::App& root, std::vector<std::unique_ptr<Command>>& all)
{
    auto& c = add(all, root.add_subcommand("coupling", "Resonance fields and strain coupling rate g"));
    auto& s = *c.settings;
    s.option("f-mode", "mechanical mode frequency, Hz", "3.83G");
    s.option("bx", "transverse field, T (default: from --f-mode and theta)");
    s.option("tensor", "shipped synthetic strain: none|30k|70k", "none");
    for(const char* key : {"gamma-s", "lambda-so", "d-s", "f-s", "theta-deg"})
        s.option(key, "SiV parameter override");
    for(const char* key : {"eps-xx", "eps-yy", "eps-zz", "eps-xy", "eps-yz", "eps-zx"})
        s.option(key, "per-phonon strain component");

    c.run = [](const Context& ctx, const Settings& s) {
        KeyValueBlock overrides;
        for(const char* key : {"gamma-s", "lambda-so", "d-s", "f-s", "theta-deg", "eps-xx", "eps-yy", "eps-zz",
                               "eps-xy", "eps-yz", "eps-zx"})
            if(s.has(key))
            {
                std::string k(key);
                std::replace(k.begin(), k.end(), '-', '_');
                overrides.set(k, s.number(key));
            }
        spinphonon::SivParams params;
        try
        {
            params = spinphonon::siv_params_from(overrides);
            params.validate();
        }
        catch(const ArgumentError& e)
        {
            throw UsageError(e.what());
        }
        const auto preset = choice<int>(s, "tensor", {{"none", 0}, {"30k", 30}, {"70k", 70}});
        spinphonon::StrainTensor base;
        if(preset == 30)
            base = spinphonon::synthetic_strain_30khz();
        else if(preset == 70)
            base = spinphonon::synthetic_strain_70khz();
        const auto eps = spinphonon::strain_from(overrides, base);

        const double omega = 2 * std::numbers::pi * positive(s, "f-mode");
        const double bx = s.has("bx") ? s.number("bx") : spinphonon::transverse_field(omega, params);
        KeyValueBlock kv;
        kv.set("f_mode_hz", omega / (2 * std::numbers::pi));
        kv.set("b_z_t", spinphonon::resonance_axial_field(omega, params));
        kv.set("b_x_t", bx);
        kv.set("g_hz", spinphonon::coupling_rate(params, bx, eps));
        ctx.emit("coupling.txt", kv.to_string());
        print(ctx, kv);
    };
}

// simulate -------------------------------------------------------------

void register_simulate(CLI::App& root, std::vector<std::unique_ptr<Command>>& all)
{
    auto* sim = root.add_subcommand("simulate", "Rabi, ODAR and sideband fixtures");
    sim->require_subcommand(1);

    {
        auto& c = add(all, sim->add_subcommand("rabi", "Decaying Rabi oscillation trace"));
        auto& s = *c.settings;
        s.option("rabi-mhz", "Rabi frequency, MHz", "33.4");
        s.option("tau-ns", "decay time, ns (inf: none)", "inf");
        s.option("t-max-ns", "trace length, ns", "300");
        s.option("points", "samples", "3001");
        s.option("sigma", "Gaussian noise rms", "0");
        s.flag("fit", "fit the trace and report the recovered parameters");
        c.run = [](const Context& ctx, const Settings& s) {
            const double rabi = positive(s, "rabi-mhz") * 1e6;
            const double tau = s.number("tau-ns") * 1e-9;
            if(!(tau > 0))
                throw UsageError("--tau-ns must be positive");
            const double sigma = s.number("sigma");
            if(!(sigma >= 0) || !std::isfinite(sigma))
                throw UsageError("--sigma must be finite and non-negative");
            const auto t = linear_grid(0, positive(s, "t-max-ns") * 1e-9, point_count(s, "points", 2));
            auto trace = qdyn::simulate_rabi_trace(rabi, tau, t, sigma, ctx.seed);
            trace.x_unit = "time (s)";
            trace.y_unit = "P(up)";

            KeyValueBlock kv;
            kv.set("rabi_hz", rabi);
            kv.set("decay_tau_s", tau);
            kv.set("noise_sigma", sigma);
            kv.set("seed", static_cast<long long>(ctx.seed));
            if(sigma == 0)
                for(std::size_t i = 1; i + 1 < trace.size(); ++i)
                    if(trace.y[i] >= trace.y[i - 1] && trace.y[i] > trace.y[i + 1] && trace.y[i] > 0.5)
                    {
                        kv.set("first_max_s", trace.x[i]);
                        break;
                    }
            if(s.enabled("fit"))
            {
                const auto fit = qdyn::fit_rabi(trace);
                kv.set("fit_rabi_hz", fit.rabi);
                kv.set("fit_decay_tau_s", fit.decay_tau);
                kv.set("fit_offset", fit.offset);
                kv.set("fit_amplitude", fit.amplitude);
            }
            ctx.emit("rabi.csv", series_csv(trace, "t_s", "p_up"));
            ctx.emit_plot("rabi.svg", trace, "Rabi oscillation");
            print(ctx, kv);
        };
    }
    {
        auto& c = add(all, sim->add_subcommand("odar", "Pulsed ODAR line: P(up) against drive frequency"));
        auto& s = *c.settings;
        s.option("rabi-mhz", "Rabi frequency, MHz", "25");
        s.option("f-spin-ghz", "spin transition, GHz", "3.83");
        s.option("pulse-ns", "acoustic pulse length, ns", "20");
        s.option("span-mhz", "sweep span centred on the transition, MHz", "200");
        s.option("points", "samples (odd puts one exactly on the transition)", "2001");
        c.run = [](const Context& ctx, const Settings& s) {
            const double rabi = positive(s, "rabi-mhz") * 1e6;
            const double f_spin = positive(s, "f-spin-ghz") * 1e9;
            const double pulse = positive(s, "pulse-ns") * 1e-9;
            const auto f = centred_grid(f_spin, positive(s, "span-mhz") * 1e6, point_count(s, "points", 3));
            auto spec = qdyn::odar_spectrum(rabi, f_spin, pulse, f);
            spec.x_unit = "drive frequency (Hz)";
            spec.y_unit = "P(up)";
            const auto peak = std::max_element(spec.y.begin(), spec.y.end()) - spec.y.begin();

            KeyValueBlock kv;
            kv.set("f_spin_hz", f_spin);
            kv.set("rabi_hz", rabi);
            kv.set("pulse_s", pulse);
            kv.set("peak_hz", spec.x[static_cast<std::size_t>(peak)]);
            kv.set("peak_p_up", spec.y[static_cast<std::size_t>(peak)]);
            kv.set("fwhm_hz", qdyn::odar_fwhm(rabi, pulse));
            ctx.emit("odar.csv", series_csv(spec, "f_hz", "p_up"));
            ctx.emit_plot("odar.svg", spec, "ODAR spectrum");
            print(ctx, kv);
        };
    }
    {
        auto& c = add(all, sim->add_subcommand("sidebands", "Phase-modulation sideband spectrum (synthetic weights)"));
        auto& s = *c.settings;
        s.option("carrier-ghz", "carrier transition, GHz", "3.83");
        s.option("mod-mhz", "modulation frequency, MHz", "50");
        s.option("beta", "modulation index", "0.5");
        s.option("linewidth-mhz", "Lorentzian FWHM, MHz", "5");
        s.option("orders", "sideband orders each side (0..10)", "3");
        s.option("span-mhz", "span centred on the carrier, MHz", "400");
        s.option("points", "samples", "4001");
        c.run = [](const Context& ctx, const Settings& s) {
            const double carrier = positive(s, "carrier-ghz") * 1e9;
            const double mod = positive(s, "mod-mhz") * 1e6;
            const double beta = s.number("beta");
            const auto orders = static_cast<int>(s.integer("orders"));
            if(orders < 0 || orders > 10)
                throw UsageError("--orders must be in 0..10");
            const auto f = centred_grid(carrier, positive(s, "span-mhz") * 1e6, point_count(s, "points", 3));
            auto spec = qdyn::sideband_spectrum(carrier, mod, beta, positive(s, "linewidth-mhz") * 1e6, orders, f);
            spec.x_unit = "frequency (Hz)";
            spec.y_unit = "intensity";

            KeyValueBlock kv;
            kv.set("carrier_hz", carrier);
            kv.set("mod_freq_hz", mod);
            kv.set("mod_index", beta);
            for(const auto& w : qdyn::sideband_weights(beta, orders))
                if(w.order >= 0)
                    kv.set("weight_" + std::to_string(w.order), w.weight);
            ctx.emit("sidebands.csv", series_csv(spec, "f_hz", "intensity"));
            ctx.emit_plot("sidebands.svg", spec, "sideband spectrum");
            print(ctx, kv);
        };
    }
}

// synth ----------------------------------------------------------------

void register_synth(CLI::App& root, std::vector<std::unique_ptr<Command>>& all)
{
    auto& c = add(all, root.add_subcommand("synth", "Synthetic Touchstone/CSV fixtures"));
    auto& s = *c.settings;
    s.option("kind", "fixture: echo|cavity", "echo");
    s.option("output", "output file (.s2p or .csv; default: <kind>.s2p)");
    s.option("f-lo", "band start, Hz (echo 1.8G, cavity 3.9G)");
    s.option("f-hi", "band stop, Hz (echo 5.8G, cavity 4.3G)");
    s.option("n-points", "frequency points", "8001");
    s.option("d", "IDT separation written to the file metadata, m", "50u");
    s.option("lambda0", "IDT pitch written to the file metadata, m", "1.7u");
    // echo network
    s.option("T", "IDT power conversion efficiency", "0.3");
    s.option("R", "mirror power reflection", "0.5");
    s.option("alpha-db-mm", "power attenuation, dB/mm", "3.2");
    s.option("length", "propagation length L, m", "58.56u");
    s.option("vg", "group velocity, m/s", "6161");
    s.option("crosstalk", "direct electromagnetic feedthrough (real amplitude)", "0");
    s.option("idt-centre", "IDT passband centre, Hz", "3.8G");
    s.option("idt-fbw", "IDT fractional bandwidth", "1.0");
    s.option("noise", "complex noise rms", "0");
    // reflection comb
    s.option("first-mode", "first mode frequency, Hz", "3.95G");
    s.option("fsr", "mode spacing, Hz", "52.6M");
    s.option("modes", "number of modes", "6");
    s.option("q", "loaded Q", "2100");
    s.option("s11-min", "|S11| at resonance", "0.714");
    add_writer_options(s);

    c.run = [](const Context& ctx, const Settings& s) {
        const auto kind = choice<int>(s, "kind", {{"echo", 0}, {"cavity", 1}});
        const bool echo = kind == 0;
        const double f_lo = s.has("f-lo") ? s.number("f-lo") : (echo ? 1.8e9 : 3.9e9);
        const double f_hi = s.has("f-hi") ? s.number("f-hi") : (echo ? 5.8e9 : 4.3e9);
        if(!(f_lo >= 0 && f_hi > f_lo) || !std::isfinite(f_hi))
            throw UsageError("band: need 0 <= --f-lo < --f-hi");
        const std::size_t n = point_count(s, "n-points", 16);

        ingest::SweepMeta meta;
        meta.device_length_m = positive(s, "d");
        meta.idt_pitch_m = positive(s, "lambda0");
        KeyValueBlock kv;
        NetworkSweep sweep;
        if(echo)
        {
            timedomain::EchoSynthesis cfg;
            cfg.model.T = s.number("T");
            cfg.model.R = s.number("R");
            cfg.model.alpha = numerics::db_convert(s.number("alpha-db-mm"), numerics::DbMode::db_per_mm_to_per_m_power);
            cfg.model.L = positive(s, "length");
            cfg.v_g = positive(s, "vg");
            cfg.f_lo = f_lo;
            cfg.f_hi = f_hi;
            cfg.n_points = n;
            cfg.crosstalk = s.number("crosstalk");
            cfg.idt = timedomain::IdtResponse{positive(s, "idt-centre"), positive(s, "idt-fbw")};
            cfg.noise_sigma = s.number("noise");
            cfg.seed = ctx.seed;
            try
            {
                sweep = timedomain::synthesize_echo_network(cfg);
            }
            catch(const ArgumentError& e)
            {
                throw UsageError(e.what());
            }
            meta.notes = "synthetic echo network";
            kv.set("kind", std::string("echo"));
            kv.set("T", cfg.model.T);
            kv.set("R", cfg.model.R);
            kv.set("alpha_db_per_mm", s.number("alpha-db-mm"));
            kv.set("L_m", cfg.model.L);
            kv.set("round_trip_s", timedomain::round_trip_time(cfg.model.L, cfg.v_g));
            kv.set("seed", static_cast<long long>(ctx.seed));
        }
        else
        {
            const auto modes = s.integer("modes");
            if(modes < 1)
                throw UsageError("--modes must be at least 1");
            try
            {
                sweep = specanalysis::synthesize_reflection_comb(linear_grid(f_lo, f_hi, n), s.number("first-mode"),
                                                                 s.number("fsr"), static_cast<std::size_t>(modes),
                                                                 s.number("q"), s.number("s11-min"));
            }
            catch(const ArgumentError& e)
            {
                throw UsageError(e.what());
            }
            meta.notes = "synthetic reflection comb";
            kv.set("kind", std::string("cavity"));
            kv.set("first_mode_hz", s.number("first-mode"));
            kv.set("fsr_hz", s.number("fsr"));
            kv.set("q_loaded", s.number("q"));
            kv.set("s11_min", s.number("s11-min"));
        }
        const std::string name = s.has("output") ? s.text("output") : (echo ? "echo.s2p" : "cavity.s2p");
        write_sweep(ctx, name, sweep, s, &meta);
        kv.set("points", static_cast<long long>(n));
        kv.set("output", ctx.path(name).string());
        print(ctx, kv);
    };
}

// convert --------------------------------------------------------------

void register_convert(CLI::App& root, std::vector<std::unique_ptr<Command>>& all)
{
    auto& c = add(all, root.add_subcommand("convert", "Touchstone <-> CSV"));
    auto& s = *c.settings;
    s.positional("input", "Touchstone .s2p or sweep .csv");
    s.option("output", "output file (.s2p or .csv)");
    add_writer_options(s);

    c.run = [](const Context& ctx, const Settings& s) {
        const auto in = load_sweep(s.text("input"));
        const std::string name = s.text("output");
        write_sweep(ctx, name, in.sweep, s, &in.meta);
        KeyValueBlock kv;
        kv.set("points", static_cast<long long>(in.sweep.freqs.size()));
        kv.set("output", ctx.path(name).string());
        print(ctx, kv);
    };
}

} // namespace

std::vector<std::unique_ptr<Command>> register_commands(CLI::App& root)
{
    std::vector<std::unique_ptr<Command>> all;
    register_cavity(root, all);
    register_echo_loss(root, all);
    register_gate(root, all);
    register_budget(root, all);
    register_coupling(root, all);
    register_simulate(root, all);
    register_synth(root, all);
    register_convert(root, all);
    return all;
}

} // namespace sawkit::cli
