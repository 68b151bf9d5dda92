#pragma once

// Argument handling for the bgg tool, separate from main so tests can
// drive it in-process.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bgg/cli.hpp"

namespace bgg::cli {

inline std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

inline int main_entry(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tate resolutions, cohomology tables and Beilinson monads over a finite field."};
  app.require_subcommand(1);
  bool json = false;
  int verbosity = 0;
  app.add_flag("--json", json, "JSON output");
  app.add_flag("-v,--verbose", verbosity, "timing on stderr");

  auto* run = app.add_subcommand("run", "run a program; a trailing command replaces the program's own");
  std::string file;
  run->add_option("file", file, "program file, '-' for stdin")->required();
  run->prefix_command();

  auto* ex = app.add_subcommand("example", "print a canned example as a program");
  std::string name, then = "betti", over = "E";
  std::optional<int> i, v, j, d, k;
  std::int64_t lambda = 1;
  std::optional<std::int64_t> prime;
  ex->add_option("name", name, "omega | powers | rnc | elliptic | hm")->required();
  ex->add_option("--i", i, "omega: exterior power");
  ex->add_option("--v", v, "omega, powers: number of variables");
  ex->add_option("--j", j, "powers: exponent");
  ex->add_option("--over", over, "powers: S or E");
  ex->add_option("--d", d, "rnc: degree of the curve");
  ex->add_option("--k", k, "rnc: twist");
  ex->add_option("--lambda", lambda, "elliptic: parameter");
  ex->add_option("--prime", prime, std::string("characteristic (default from ") + kPrimeVariable + " or 32003)");
  ex->add_option("--then", then, "command appended to the program");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*ex) {
      const std::int64_t p = prime ? *prime : default_prime();
      if (p <= 2 || p >= (1LL << 31) || !dsl::detail::is_prime(p)) throw PreconditionError("--prime must be an odd prime below 2^31");
      out << example_program(name, {i, v, j, d, k, lambda, over}, p, then);
    } else {
      std::string text;
      if (file == "-") {
        text = read_all(in);
      } else {
        std::ifstream f(file);
        if (!f) throw PreconditionError("cannot read " + file);
        text = read_all(f);
      }
      std::string command;
      for (const auto& r : run->remaining()) command += (command.empty() ? "" : " ") + r;
      const dsl::Session s = session(text, command);
      const Output o = run_command(s);
      if (json || s.command.find("json")) out << o.json.dump(2) << '\n';
      else out << o.text;
    }
  } catch (const dsl::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return ParseFailed;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return PreconditionFailed;
  } catch (const UncertifiedError& e) {
    err << "uncertified: " << e.what() << '\n';
    return Uncertified;
  } catch (const ConstructionError& e) {
    err << "internal error: " << e.what() << '\n';
    return Internal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Failure;
  }
  if (verbosity)
    err << "time " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  return Ok;
}

}  // namespace bgg::cli
