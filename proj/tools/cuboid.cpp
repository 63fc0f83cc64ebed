#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace cuboid;
using namespace cuboid::cli;

constexpr const char* kRationalHelp =
    "Rationals are written exactly as p/q or p (e.g. -3/4, 5). Decimals are rejected. "
    "Inputs not in lowest terms are reduced with a notice.";

constexpr const char* kExitHelp =
    "EXIT STATUS\n  0 success, 2 perfect cuboid found with --stop-on-hit, 3 bad arguments,\n"
    "  4 singular point or pole, 5 identity failure, 6 checkpoint mismatch, 7 I/O error.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact search and verification tool for the perfect cuboid inverse problems."};
  app.require_subcommand(1);
  app.footer(kExitHelp);

  std::string format = "text";
  bool quiet = false;
  app.add_option("--output-format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("-q,--quiet", quiet, "Suppress notices and progress");

  std::string b_text, c_text, e21 = "printed";
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("b", b_text, "Parameter b (p/q)")->required();
    sub->add_option("c", c_text, "Parameter c (p/q)")->required();
    sub->footer(std::string(kRationalHelp) + "\n\n" + kExitHelp);
  };
  auto add_form = [&](CLI::App* sub) {
    sub->add_option("--e21-form", e21, "E21 formula variant: printed, common or corrected")
        ->check(CLI::IsMember({"printed", "common", "corrected"}));
  };

  auto* identities = app.add_subcommand(
      "identities", "Re-prove the denominator factorization, reduction, discriminant and reducibility identities");
  identities->footer(kExitHelp);

  auto* classify_cmd = app.add_subcommand(
      "classify", "Print the singularity flags of (b, c) and the values of the three denominator factors");
  add_point(classify_cmd);

  auto* coeffs = app.add_subcommand("coeffs", "Print the nine coefficients E10..E12 at (b, c) as key=value");
  add_point(coeffs);
  add_form(coeffs);

  auto* solve = app.add_subcommand("solve", "Solve the edge and diagonal cubics at (b, c) over the rationals");
  add_point(solve);
  add_form(solve);

  auto* verify = app.add_subcommand("verify", "Grade (b, c) through the full verification pipeline");
  add_point(verify);
  add_form(verify);

  SearchArgs sargs;
  unsigned long height = 0;
  std::string b_min, b_max, c_min, c_max, checkpoint, output, hits, audit;
  unsigned jobs = 1;
  bool stop_on_hit = false;
  std::uint64_t block_size = 256;
  long checkpoint_ms = 1000;
  auto* search = app.add_subcommand("search", "Enumerate (b, c) by height and grade every point");
  search->add_option("--height", height, "Height bound H: |p| <= H, 1 <= q <= H")->required()->check(CLI::PositiveNumber);
  search->add_option("--b-min", b_min, "Lower bound for b");
  search->add_option("--b-max", b_max, "Upper bound for b");
  search->add_option("--c-min", c_min, "Lower bound for c");
  search->add_option("--c-max", c_max, "Upper bound for c");
  search->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--checkpoint", checkpoint, "Checkpoint file; an existing one is resumed")->required();
  search->add_option("--output", output, "JSONL output for records of level >= 1")->required();
  search->add_option("--hits", hits, "File for level-6 records (default: OUTPUT.hits)");
  search->add_flag("--stop-on-hit", stop_on_hit, "Stop at the first perfect cuboid (exit status 2)");
  search->add_option("--audit-against", audit,
                     "Compare the finished output with another run's JSONL and report level >= 5 differences");
  search->add_option("--block-size", block_size, "Points per work block")->check(CLI::PositiveNumber);
  search->add_option("--checkpoint-interval-ms", checkpoint_ms, "Minimum time between checkpoint writes");
  add_form(search);
  search->footer(std::string(kRationalHelp) + "\n\n" + kExitHelp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Context ctx{std::cout, std::cerr, format == "json" ? Format::Json : Format::Text, quiet};
  try {
    E21Form form = *parse_e21_form(e21);
    auto point = [&] { return Params{parse_arg(ctx, "b", b_text), parse_arg(ctx, "c", c_text)}; };

    if (*identities) return cmd_identities(ctx);
    if (*classify_cmd) return cmd_classify(ctx, point());
    if (*coeffs) return cmd_coeffs(ctx, point(), form);
    if (*solve) return cmd_solve(ctx, point(), form);
    if (*verify) return cmd_verify(ctx, point(), form);
    if (*search) {
      sargs.space.height = height;
      sargs.space.e21_form = form;
      Rational outside(static_cast<long>(height) + 1);
      auto range = [&](const std::string& lo, const std::string& hi, const char* name) -> std::optional<Interval> {
        if (lo.empty() && hi.empty()) return std::nullopt;
        Interval iv{lo.empty() ? -outside : parse_arg(ctx, std::string(name) + "-min", lo),
                    hi.empty() ? outside : parse_arg(ctx, std::string(name) + "-max", hi)};
        return iv;
      };
      sargs.space.b_range = range(b_min, b_max, "b");
      sargs.space.c_range = range(c_min, c_max, "c");
      sargs.run.jobs = jobs;
      sargs.run.checkpoint_path = checkpoint;
      sargs.run.output_path = output;
      sargs.run.hits_path = hits;
      sargs.run.stop_on_hit = stop_on_hit;
      sargs.run.block_size = block_size;
      sargs.run.checkpoint_interval = std::chrono::milliseconds(checkpoint_ms);
      if (!audit.empty()) sargs.audit_against = audit;
      return cmd_search(ctx, sargs);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SingularPointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const E21PoleError& e) {
    std::cerr << "error: " << e.what() << " (try --e21-form common or corrected)\n";
    return kDomain;
  } catch (const CheckpointMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckpointMismatch;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
