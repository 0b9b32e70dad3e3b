#pragma once

#include "settings.hpp"

#include "sawkit/kv.hpp"
#include "sawkit/numerics/series.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <vector>

namespace sawkit::cli
{

struct Context
{
    std::ostream& out;
    std::ostream& err;
    KeyValueBlock config;
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 0;
    bool plot = false;

    std::filesystem::path path(const std::string& name) const { return out_dir / name; }
    void emit(const std::string& name, std::string_view contents) const;
    void emit_plot(const std::string& name, const numerics::Series& series, std::string_view title) const;
};

struct Command
{
    CLI::App* app = nullptr;
    std::unique_ptr<Settings> settings;
    std::function<void(const Context&, const Settings&)> run;
};

std::vector<std::unique_ptr<Command>> register_commands(CLI::App& root);

} // namespace sawkit::cli
