// Copyright 2026 The pglb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: formatting, extraction, execution and the
// compilers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pglb/pglb.hpp"

namespace {

enum ExitCode { kOk = 0, kMismatch = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin),
            std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ParseError messages carry line:column; prefix the file name.
pglb::InstructionSequence load_program(const std::string& path) {
  try {
    return pglb::parse(slurp(path));
  } catch (const pglb::ParseError& e) {
    throw pglb::ParseError(path + ":" + e.what());
  }
}

std::vector<bool> parse_bits(const std::string& text) {
  std::vector<bool> bits;
  for (char c : text) {
    if (c != 't' && c != 'f') {
      throw UsageError("--in takes a string over {t,f}, got '" + text + "'");
    }
    bits.push_back(c == 't');
  }
  return bits;
}

void require_services(const pglb::InstructionSequence& prog) {
  for (std::size_t p = 1; p <= prog.size(); ++p) {
    const auto& u = prog.at(p);
    if (u.performs_action() && !u.action.is_focused()) {
      throw UsageError("non-service action '" + u.action.str() +
                       "' at position " + std::to_string(p) +
                       "; run needs focus.method actions");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instruction sequences with backward jumps"};
  app.require_subcommand(1);
  int status = kOk;

  std::string file;
  auto* fmt = app.add_subcommand("fmt", "print the canonical form of a program");
  fmt->add_option("file", file, "program file, - for stdin")->required();
  fmt->callback([&] { std::cout << pglb::render(load_program(file)) << "\n"; });

  bool graph = false;
  auto* ext = app.add_subcommand("extract", "print the thread of a program");
  ext->add_option("file", file, "program file")->required();
  ext->add_flag("--graph", graph, "Graphviz output instead of equations");
  ext->callback([&] {
    const auto t = pglb::extract(load_program(file));
    if (graph) {
      std::cout << pglb::to_dot(t);
    } else {
      for (const auto& line : pglb::equations(t)) std::cout << line << "\n";
    }
  });

  std::size_t depth = 0;
  auto* proj = app.add_subcommand("project", "print a finite projection");
  proj->add_option("file", file, "program file")->required();
  proj->add_option("-n", depth, "projection depth")->required();
  proj->callback([&] {
    std::cout << pglb::project(pglb::extract(load_program(file)), depth).str()
              << "\n";
  });

  std::string in_bits;
  std::size_t aux = 0;
  bool show_trace = false;
  std::size_t max_steps = 1000000;
  auto* run = app.add_subcommand("run", "compute the reply of a program");
  run->add_option("file", file, "program file")->required();
  run->add_option("--in", in_bits, "input registers b1..bk as t/f")
      ->required();
  run->add_option("--aux", aux, "number of auxiliary registers");
  run->add_flag("--trace", show_trace, "print every executed step");
  run->add_option("--max-steps", max_steps, "step limit for --trace");
  run->callback([&] {
    const auto prog = load_program(file);
    require_services(prog);
    const auto bits = parse_bits(in_bits);
    if (show_trace) {
      const auto log = pglb::trace(prog, bits, aux, max_steps);
      for (const auto& step : log) std::cout << step.str() << "\n";
      if (!pglb::trace_outcome(log)) {
        // The walk was cut short; fall back to the exact reply.
        std::cout << to_char(pglb::compute(prog, bits, aux)) << "\n";
        return;
      }
      std::cout << to_char(*pglb::trace_outcome(log)) << "\n";
      return;
    }
    std::cout << to_char(pglb::compute(prog, bits, aux)) << "\n";
  });

  auto* comp = app.add_subcommand("compile", "generate a loop-free program");
  comp->require_subcommand(1);
  auto* comp_tt = comp->add_subcommand("tt", "from a truth table");
  comp_tt->add_option("file", file, "truth table file")->required();
  comp_tt->callback([&] {
    std::cout << pglb::render_lines(
        pglb::compile_truth_table(pglb::parse_truth_table(slurp(file))));
  });
  auto* comp_circ = comp->add_subcommand("circuit", "from a NOT/AND/OR netlist");
  comp_circ->add_option("file", file, "netlist file")->required();
  comp_circ->callback([&] {
    const auto c = pglb::parse_circuit(slurp(file));
    std::cerr << "auxiliary registers: " << c.gate_count() << "\n";
    std::cout << pglb::render_lines(pglb::compile_circuit(c));
  });

  std::size_t k = 0;
  auto* gen = app.add_subcommand("gen", "generate a program");
  gen->require_subcommand(1);
  auto* gen_sat = gen->add_subcommand("3sat", "3SAT(k) with backward jumps");
  gen_sat->add_option("-k", k, "number of variables")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  gen_sat->callback(
      [&] { std::cout << pglb::render_lines(pglb::gen_3sat(k)); });

  auto* enc = app.add_subcommand("encode", "encode input data");
  enc->require_subcommand(1);
  auto* enc_cnf = enc->add_subcommand("cnf", "DIMACS 3-CNF to input bits");
  enc_cnf->add_option("file", file, "DIMACS file")->required();
  enc_cnf->callback([&] {
    std::cout << pglb::encoding_string(
                     pglb::encode_cnf(pglb::parse_dimacs(slurp(file))))
              << "\n";
  });

  std::string table_file;
  auto* ver = app.add_subcommand("verify", "check a program against a table");
  ver->add_option("file", file, "program file")->required();
  ver->add_option("--tt", table_file, "truth table file")->required();
  ver->add_option("--aux", aux, "number of auxiliary registers");
  ver->callback([&] {
    const auto prog = load_program(file);
    require_services(prog);
    const auto f = pglb::parse_truth_table(slurp(table_file));
    const auto report = pglb::equivalence_check(prog, f, aux);
    for (const auto& m : report.mismatches) std::cout << m.str() << "\n";
    if (report.empty()) {
      std::cout << "equivalent on " << f.rows() << " inputs\n";
    } else {
      status = kMismatch;
    }
  });

  std::size_t max_k = 4;
  auto* len = app.add_subcommand("lengths", "program lengths for 3SAT(k)");
  len->add_option("--max-k", max_k, "largest k")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100}));
  len->callback([&] {
    std::cout << "k\tloop_free\tbackward_jumps\n";
    for (std::size_t i = 1; i <= max_k; ++i) {
      std::cout << i << "\t" << pglb::loop_free_3sat_length(i) << "\t"
                << pglb::gen_3sat_length(i) << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const pglb::ParseError& e) {
    std::cerr << "pglb: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "pglb: " << e.what() << "\n";
    return kUsage;
  } catch (const pglb::ResourceError& e) {
    std::cerr << "pglb: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pglb: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "pglb: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}
