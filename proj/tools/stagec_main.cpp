#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stagec/core_parser.hpp"
#include "stagec/diagnostics.hpp"
#include "stagec/eval.hpp"
#include "stagec/lint.hpp"
#include "stagec/pipeline.hpp"
#include "stagec/pretty.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(4);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int report(const stagec::CompileError& err, bool json) {
  std::cerr << (json ? stagec::render_json(err.diag)
                     : stagec::render_text(err.diag))
            << "\n";
  return stagec::phase_exit_code(err.diag.phase);
}

long long default_max_steps() {
  if (const char* env = std::getenv("STAGEC_MAX_STEPS")) {
    try {
      return std::stoll(env);
    } catch (...) {
      std::cerr << "error: STAGEC_MAX_STEPS is not a number\n";
      std::exit(4);
    }
  }
  return 1000000;
}

int run_check(const std::string& path, bool json) {
  try {
    stagec::CompileOutput out = stagec::compile_source(read_file(path));
    std::cout << "main : " << stagec::pretty_type(out.program.main_type)
              << "\n";
    return 0;
  } catch (const stagec::CompileError& err) {
    return report(err, json);
  }
}

int run_elaborate(const std::string& path, const std::string& out_path,
                  bool json) {
  try {
    stagec::CompileOutput out = stagec::compile_source(read_file(path));
    std::string text = stagec::pretty_core_program(out.program);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 4;
      }
      f << text;
    }
    return 0;
  } catch (const stagec::CompileError& err) {
    return report(err, json);
  }
}

int run_lint(const std::string& path, bool json) {
  try {
    stagec::CoreProgram program = stagec::parse_core(read_file(path));
    stagec::lint_program(program);
    std::cout << "ok\n";
    return 0;
  } catch (const stagec::CompileError& err) {
    return report(err, json);
  }
}

int run_run(const std::string& path, long long max_steps, bool trace,
            bool json) {
  try {
    stagec::CompileOutput out = stagec::compile_source(read_file(path));
    stagec::RunOptions opts;
    opts.max_steps = max_steps;
    if (trace) {
      opts.trace = [json](long long step, const std::string& label,
                          const stagec::CoreProgram& program) {
        if (json) {
          nlohmann::json j;
          j["step"] = step;
          j["rule"] = label;
          j["program"] = stagec::pretty_core_program(program);
          std::cerr << j.dump() << "\n";
        } else {
          std::cerr << "[" << step << "] " << label << "\n"
                    << stagec::pretty_core_program(program) << "\n";
        }
      };
    }
    stagec::RunResult result = stagec::run_program(out.program, opts);
    std::cout << stagec::pretty_value(result.value) << "\n";
    return 0;
  } catch (const stagec::CompileError& err) {
    return report(err, json);
  }
}

int run_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".sth") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  if (files.empty()) {
    std::cerr << "error: no .sth files in '" << dir << "'\n";
    return 4;
  }

  size_t width = 0;
  for (const auto& f : files) {
    width = std::max(width, f.filename().string().size());
  }

  int matched = 0;
  for (const auto& f : files) {
    std::string name = f.filename().string();
    std::string text = read_file(f.string());
    std::string line = name + std::string(width - name.size() + 2, ' ');
    auto exp = stagec::parse_expectation(text);
    if (!exp) {
      std::cout << line << "no expectation header — SKIPPED\n";
      continue;
    }
    stagec::VerdictOutcome v = stagec::check_expectation(text, *exp);
    if (v.matched) {
      ++matched;
      std::cout << line << v.expected << "  ok\n";
    } else {
      std::cout << line << v.expected << "  MISMATCH (got " << v.actual
                << ")\n";
    }
  }
  std::cout << matched << "/" << files.size() << " verdicts matched\n";
  return matched == static_cast<int>(files.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"staged-language compiler pipeline"};
  app.require_subcommand(1);

  bool json = false;
  app.add_flag("--json", json, "print diagnostics as JSON");
  app.fallthrough();

  std::string check_file;
  auto* check = app.add_subcommand("check", "typecheck a source program");
  check->add_option("file", check_file, "source file")->required();

  std::string elab_file;
  std::string elab_out;
  auto* elaborate =
      app.add_subcommand("elaborate", "print the elaborated core program");
  elaborate->add_option("file", elab_file, "source file")->required();
  elaborate->add_option("--out", elab_out, "write the core program here");

  std::string lint_file;
  auto* lint =
      app.add_subcommand("lint", "validate an elaborated core program");
  lint->add_option("file", lint_file, "core file")->required();

  std::string run_file;
  long long max_steps = default_max_steps();
  bool trace = false;
  auto* run = app.add_subcommand("run", "compile and evaluate a program");
  run->add_option("file", run_file, "source file")->required();
  run->add_option("--max-steps", max_steps, "step budget");
  run->add_flag("--trace", trace, "log each reduction step to stderr");

  std::string corpus_dir;
  auto* corpus = app.add_subcommand(
      "corpus", "check every .sth program in a directory against its header");
  corpus->add_option("dir", corpus_dir, "directory of .sth files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits 0; bad usage exits 2
  }

  if (check->parsed()) return run_check(check_file, json);
  if (elaborate->parsed()) return run_elaborate(elab_file, elab_out, json);
  if (lint->parsed()) return run_lint(lint_file, json);
  if (run->parsed()) return run_run(run_file, max_steps, trace, json);
  if (corpus->parsed()) return run_corpus(corpus_dir);
  return 4;
}
