#include "sawkit_cli/cli.hpp"

#include "commands.hpp"

#include <fstream>
#include <sstream>

namespace sawkit::cli
{

namespace
{

KeyValueBlock load_config(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if(!f)
        throw UsageError("cannot open config file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    try
    {
        return KeyValueBlock::parse(buf.str());
    }
    catch(const FormatError& e)
    {
        throw FormatError(path + ": " + e.what());
    }
}

std::string command_path(const CLI::App* app)
{
    std::string name = app->get_name();
    for(auto* p = app->get_parent(); p && p->get_parent(); p = p->get_parent())
        name = p->get_name() + " " + name;
    return name;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"SAW cavity, echo-loss and spin-phonon analysis", "sawkit"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", seed_text;
    bool plot = false;
    app.add_option("--config", config_path, "key = value file; flags override it");
    app.add_option("--out-dir", out_dir, "directory for report files")->capture_default_str();
    app.add_option("--seed", seed_text, "random seed for synthetic noise [default: 0]");
    auto* plot_flag = app.add_flag("--plot", plot, "also write SVG plots");

    auto commands = register_commands(app);

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch(const CLI::CallForHelp&)
    {
        const CLI::App* shown = &app;
        for(auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); sub;
            sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front())
            shown = sub;
        out << shown->help();
        return kExitOk;
    }
    catch(const CLI::ParseError& e)
    {
        err << "sawkit: " << e.what() << "\n";
        return kExitUsage;
    }

    const Command* selected = nullptr;
    for(const auto& c : commands)
        if(c->app->parsed())
            selected = c.get();
    if(!selected)
    {
        err << "sawkit: no command given (try --help)\n";
        return kExitUsage;
    }

    const std::string where = "sawkit " + command_path(selected->app);
    try
    {
        Context ctx{out, err, {}};
        if(!config_path.empty())
        {
            ctx.config = load_config(config_path);
            selected->settings->bind_config(&ctx.config);
        }
        const auto global = [&](const char* key) { return ctx.config.get(key); };
        ctx.out_dir = out_dir;
        if(out_dir == "." && !app.get_option("--out-dir")->count())
            if(auto v = global("out_dir"))
                ctx.out_dir = *v;
        std::optional<std::string> seed = seed_text.empty() ? global("seed") : std::optional(seed_text);
        if(seed)
        {
            try
            {
                std::size_t used = 0;
                ctx.seed = std::stoull(*seed, &used);
                if(used != seed->size() || seed->front() == '-')
                    throw std::invalid_argument("trailing");
            }
            catch(const std::logic_error&)
            {
                throw UsageError("--seed: expected a non-negative integer, got '" + *seed + "'");
            }
        }
        ctx.plot = plot;
        if(!plot_flag->count())
            if(auto v = global("plot"))
                ctx.plot = parse_bool(*v, "plot");

        selected->run(ctx, *selected->settings);
        return kExitOk;
    }
    catch(const UsageError& e)
    {
        err << where << ": " << e.what() << "\n";
        return kExitUsage;
    }
    catch(const FormatError& e)
    {
        err << where << ": " << e.what() << "\n";
        return kExitUsage;
    }
    catch(const std::exception& e)
    {
        err << where << ": " << e.what() << "\n";
        return kExitAnalysis;
    }
}

} // namespace sawkit::cli
