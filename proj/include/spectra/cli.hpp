#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spectra/io.hpp"

namespace spectra {

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInfeasible = 2,
  kExitUnknown = 3,
  kExitPrecondition = 4,
  kExitParse = 64
};

enum class Method { Auto, Singleton, Diagonal, OneVariable, Simplex, Sdp };

std::string to_string(Method m);
/// "auto", "singleton", "diagonal", "one-var", "simplex" or "sdp".
Method parse_method(const std::string& text);

struct CliConfig {
  Method method = Method::Auto;
  unsigned degree = 2;
  double tol = 1e-8;
  std::int64_t denominator_bound = 1000000;
  std::string output;

  /// Throws ParseError unless tol > 0, degree ≤ 4 and the bound is ≥ 1.
  void validate() const;
};

inline constexpr unsigned kMaxDegree = 4;

/// Payload of one command. The certify and refute payloads embed the
/// certificate found, if any, under "certificate".
struct CommandOutcome {
  int exit_code = kExitOk;
  std::string status = "ok";
  Json result = Json::object();
  std::vector<std::string> warnings;
};

CommandOutcome cmd_analyze(const LinearPencil& l);
CommandOutcome cmd_certify(const LinearPencil& l1, const LinearPencil& l2, const CliConfig& config);
CommandOutcome cmd_verify(const LinearPencil& l1, const LinearPencil& l2, const Json& certificate, double tol);
CommandOutcome cmd_refute(const LinearPencil& l1, const LinearPencil& l2, unsigned degree, const CliConfig& config);
CommandOutcome cmd_eval(const LinearPencil& l, const PencilPoint& x);
CommandOutcome cmd_eval(const LinearPencil& l, const MatrixTuple& x);

/// x1 over [a, b], x2 over [c, d].
struct PlotWindow {
  std::array<Rational, 4> bounds;
};

PlotWindow parse_window(const std::string& text);

/// "x1,x2,member" rows over the grid, exact membership. Throws
/// NotTwoVariables unless n == 2.
std::string cmd_plot(const LinearPencil& l, const PlotWindow& window, const Rational& step);

/// Full command line (without the program name): writes the JSON report
/// (or CSV for plot) to `out`, diagnostics to `err`, returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectra
