#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hodgewalk/error.hpp"
#include "hodgewalk/report.hpp"

namespace hodgewalk::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int { kPass = 0, kAssertionFailure = 1, kParse = 2, kStructure = 3, kResourceCap = 4 };

int exit_code_for(ErrorCode code) noexcept;

/// --cap when given, else HODGEWALK_CAP when set, else the library default.
std::size_t dense_cap(std::optional<std::size_t> flag);

/// "sha256:<hex>" over the contents of `files`, in order.
std::string input_digest(std::span<const std::filesystem::path> files);
std::string text_digest(std::string_view text);

struct RunReport {
  std::string command;
  nlohmann::json arguments = nlohmann::json::object();
  std::string input_digest;
  nlohmann::json result = nlohmann::json::object();
  Tally tally;

  int exit_code() const noexcept { return tally.fail == 0 ? kPass : kAssertionFailure; }
  nlohmann::json to_json() const;
};

struct SpectrumArgs {
  std::filesystem::path file;
  std::optional<int> level;
  std::vector<std::string> only;
  std::optional<std::size_t> cap;
  std::uint64_t seed = 1;
  int garland_vectors = 10;
  double eps = 0.05;
};

struct TargetArgs {
  std::string kind;  // "is" or "mi"
  std::filesystem::path graph;
  std::filesystem::path m1;
  std::filesystem::path m2;
  int k = 2;
  std::optional<std::size_t> cap;
};

struct BuildArgs {
  TargetArgs target;
  std::optional<std::filesystem::path> out;
};

struct SampleArgs {
  TargetArgs target;
  std::uint64_t seed = 1;
  double eps = 0.05;
  std::optional<std::uint64_t> burnin;
  std::uint64_t samples = 100000;
  std::uint64_t thin = 1;
  std::optional<std::filesystem::path> trace;
};

struct ExportArgs {
  std::filesystem::path file;
  std::string op;  // up, down, downup, updown, nonlazy, long
  int j = 0;
  int b = 1;
  std::optional<std::size_t> cap;
};

RunReport cmd_spectrum(const SpectrumArgs& args);
RunReport cmd_build(const BuildArgs& args);
RunReport cmd_sample(const SampleArgs& args);
RunReport cmd_verify(std::uint64_t seed, std::optional<std::size_t> cap);
/// Writes the requested dense operator in the matrix text format.
void cmd_export(const ExportArgs& args, std::ostream& os);

}  // namespace hodgewalk::cli
