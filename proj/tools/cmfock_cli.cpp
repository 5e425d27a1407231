// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "cmfock/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Flags {
  std::string config, seed, out, format;
  std::vector<std::string> tol;
  std::map<std::string, std::string> params;
};

void add_common(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "key=value config file");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--out", f.out, "output file (default stdout)");
  app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", f.tol, "tolerance override name=value (repeatable)");
}

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmfock: checks for CAR representations, implementers, cocycles and crossed modules"};
  app.require_subcommand(1);
  std::map<std::string, Flags> flags;
  for (const auto& name : cmfock::cli::subcommands()) {
    auto* sub = app.add_subcommand(name);
    auto& f = flags[name];
    add_common(*sub, f);
    for (const auto& o : cmfock::cli::options(name)) sub->add_option("--" + o.name, f.params[o.name], o.help);
    if (name == "mf-check")
      sub->add_option("--emit", f.format, "alias of --format")->check(CLI::IsMember({"csv", "json"}));
  }
  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  const auto* sub = app.get_subcommands().front();
  const auto& f = flags[name];
  try {
    auto config = cmfock::cli::make_config(name);
    if (!f.config.empty()) cmfock::cli::load_config_file(config, f.config);
    for (const auto& [key, value] : f.params)
      if (sub->count("--" + key)) cmfock::cli::apply_setting(config, key, value);
    if (!f.seed.empty()) cmfock::cli::apply_setting(config, "seed", f.seed);
    if (!f.format.empty()) cmfock::cli::apply_setting(config, "format", f.format);
    if (!f.out.empty()) cmfock::cli::apply_setting(config, "out", f.out);
    for (const auto& t : f.tol) cmfock::cli::apply_tolerance(config, t);

    const auto report = cmfock::cli::run(config);
    const std::string text = cmfock::cli::render(config, report);
    const std::string verdict = cmfock::cli::summary(config, report).dump() + "\n";
    if (config.out.empty()) {
      std::cout << text;
      if (config.format == "csv") std::cerr << verdict;
    } else {
      write(config.out, text);
      if (config.format == "csv") write(config.out + ".summary.json", verdict);
    }
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
