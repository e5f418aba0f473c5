// orbi: check, translate, lint and format ORBI specifications.
//
//   orbi check FILE...
//   orbi translate --target ab|hy|bel|tw [--out-dir DIR] FILE...
//   orbi lint [--werror] FILE...
//   orbi fmt FILE...
//
// Exit status: 0 success, 1 error-level diagnostics (or warnings under
// --werror), 2 usage error or unreadable input.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "orbi/context.hpp"
#include "orbi/directives.hpp"
#include "orbi/lint.hpp"
#include "orbi/parser.hpp"
#include "orbi/translate.hpp"

namespace fs = std::filesystem;
using namespace orbi;

namespace {

struct Options {
  std::string command;
  std::vector<std::string> files;
  std::string target;
  std::string out_dir;
  bool werror = false;
  bool json = false;
};

struct FileResult {
  std::vector<Diagnostic> diags;
  std::string stdout_text;  // fmt output, progress lines
  bool usage_error = false;
};

bool use_color() {
  const char* env = std::getenv("ORBI_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return isatty(STDOUT_FILENO) != 0;
}

std::string render(const Diagnostic& d, bool json, bool color) {
  if (json) return format_json(d);
  std::string line = format_line(d);
  if (color) {
    const char* c = d.severity == Severity::Error ? "\x1b[31m" : "\x1b[33m";
    std::string tag = "[" + d.code + "]";
    if (auto pos = line.find(tag); pos != std::string::npos)
      line.replace(pos, tag.size(), c + tag + "\x1b[0m");
  }
  if (!d.hint.empty()) line += "\n  hint: " + d.hint;
  return line;
}

// Write to a sibling temporary, then rename over the destination.
void write_atomically(const fs::path& dest, const std::string& text) {
  fs::path tmp = dest;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, dest);
}

FileResult process(const Options& opt, const std::string& path) {
  FileResult r;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    r.usage_error = true;
    r.stdout_text = "orbi: cannot read " + path + "\n";
    return r;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::string source = buf.str();

  Diagnostics diags;
  if (opt.command == "fmt") {
    OrbiSpec spec = parse_spec(source, diags, path);
    if (!diags.has_errors()) r.stdout_text = pretty(spec);
    r.diags = diags.items();
    return r;
  }

  CheckedSpec cs = check_source(source, diags, path);
  if (diags.has_errors()) {
    r.diags = diags.items();
    return r;
  }

  if (opt.command == "check") {
    for (System s : {System::Hy, System::Ab, System::Bel, System::Tw})
      resolve(cs, s, diags);
    if (!diags.has_errors()) r.stdout_text = path + ": ok\n";
  } else if (opt.command == "lint") {
    for (auto& d : lint(cs)) diags.add(std::move(d));
  } else if (opt.command == "translate") {
    System target = *system_from_name(opt.target);
    TargetDoc doc = translate_spec(cs, target, diags);
    if (!diags.has_errors()) {
      fs::path dir = opt.out_dir.empty() ? fs::path(".") : fs::path(opt.out_dir);
      fs::path dest = dir / (fs::path(path).stem().string() + "." + opt.target + ".out");
      try {
        fs::create_directories(dir);
        write_atomically(dest, doc.render());
        r.stdout_text = "wrote " + dest.string() + "\n";
      } catch (const std::exception& e) {
        r.usage_error = true;
        r.stdout_text = std::string("orbi: ") + e.what() + "\n";
      }
    }
  }
  r.diags = diags.items();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check, lint, format and translate ORBI specifications"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("files", opt.files, "ORBI files")->required();
    sub->add_flag("--werror", opt.werror, "Treat warnings as errors");
    sub->add_flag("--json", opt.json, "One JSON object per diagnostic");
  };
  add_common(app.add_subcommand("check", "Parse and check specs"));
  add_common(app.add_subcommand("lint", "Report guideline violations"));
  add_common(app.add_subcommand("fmt", "Print specs in canonical layout"));
  CLI::App* tr = app.add_subcommand("translate", "Translate to a target dialect");
  add_common(tr);
  tr->add_option("--target,-t", opt.target, "Target system")
      ->required()
      ->check(CLI::IsMember({"ab", "hy", "bel", "tw"}));
  tr->add_option("--out-dir,-o", opt.out_dir, "Directory for <name>.<target>.out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.command = app.get_subcommands().front()->get_name();

  std::vector<std::future<FileResult>> jobs;
  for (const auto& f : opt.files)
    jobs.push_back(std::async(std::launch::async, process, std::cref(opt), f));

  bool color = !opt.json && use_color();
  bool usage = false, failed = false;
  for (auto& job : jobs) {
    FileResult r = job.get();
    if (r.usage_error) {
      usage = true;
      std::cerr << r.stdout_text;
      continue;
    }
    bool bad = false;
    for (const auto& d : r.diags) {
      std::cout << render(d, opt.json, color) << "\n";
      bad = bad || d.severity == Severity::Error || opt.werror;
    }
    if (!bad) std::cout << r.stdout_text;
    failed = failed || bad;
  }
  std::cout.flush();
  if (usage) return 2;
  return failed ? 1 : 0;
}
