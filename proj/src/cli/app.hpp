#pragma once

#include <CLI11.hpp>

#include "qdemon/cli/config.hpp"

namespace qdemon::cli {

// CLI11 application bound to a RunConfig.
struct AppBinding {
  AppBinding();
  AppBinding(const AppBinding&) = delete;
  AppBinding& operator=(const AppBinding&) = delete;

  /// Resolves the chosen subcommand and cross-option checks; throws ParseError.
  RunConfig finish();

  RunConfig config;
  CLI::App app;
  CLI::App* measure = nullptr;
  CLI::App* protocol = nullptr;
  CLI::App* sweep = nullptr;
  CLI::App* validate = nullptr;
};

}  // namespace qdemon::cli
