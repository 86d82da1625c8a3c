#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "affrep/error.hpp"
#include "commands.hpp"

using affrep::cli::Options;

namespace {

// Options beyond the shared set, per subcommand.
const std::map<std::string, std::set<std::string>> kExtra = {
    {"verify-identities", {"samples"}},
    {"algebra-validate", {}},
    {"eval-module", {"module", "eval"}},
    {"annihilator", {"module", "eval"}},
    {"irreducible", {"module", "eval"}},
    {"decompose", {"module", "eval"}},
    {"isomorphic", {"module", "eval", "other"}},
    {"weyl", {"l", "lam"}},
    {"irrquotient", {"l", "lam"}},
    {"singular", {"l", "lam", "layer", "weyl"}},
    {"vacuum", {"l", "lam", "samples", "weyl"}},
    {"integrable", {"l", "lam", "bound", "weyl", "module", "eval"}},
    {"tensorC", {"l", "lam", "weyl", "module", "eval"}},
    {"factorize", {"l", "lam", "weyl", "module", "eval"}},
    {"commute-check", {"l", "lam", "weyl", "module", "eval"}},
    {"projection-check", {"samples"}},
    {"loop", {"mu", "tmin", "tmax", "z"}},
    {"psi-hat", {"l", "lam", "mu", "nu", "z", "samples"}},
    {"fusion-dim", {"l", "lam", "mu", "nu", "z"}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with modules over untwisted affine Lie algebras"};
  app.require_subcommand(1);
  Options opt;
  std::string out;
  std::map<std::string, CLI::App*> subs;
  for (const auto& info : affrep::cli::command_table()) {
    CLI::App* s = app.add_subcommand(info.name, info.description);
    s->add_option("--seed", opt.seed, "seed for randomized samples")->capture_default_str();
    s->add_option("--window", opt.window, "window or mode range for comparisons");
    s->add_option("--depth", opt.depth, "truncation depth of graded modules");
    s->add_option("--modes", opt.modes, "mode bound |m| <= modes");
    s->add_option("--algebra", opt.algebra, "builtin name (sl2, sl3) or algebra description file")->capture_default_str();
    s->add_option("--out", out, "report path (default: $AFFREP_OUT_DIR/<command>.json, else stdout)");
    const auto& extra = kExtra.at(info.name);
    auto has = [&](const char* k) { return extra.count(k) > 0; };
    if (has("samples")) s->add_option("--samples", opt.samples, "number of random samples");
    if (has("module")) s->add_option("--module", opt.module, "evaluation module description file");
    if (has("eval")) s->add_option("--eval", opt.eval, "sl2 evaluation factors as dim:z,dim:z");
    if (has("other")) s->add_option("--other", opt.other, "second evaluation module description file")->required();
    if (has("l")) s->add_option("--l,--level", opt.level, "level l");
    if (has("lam")) s->add_option("--lam", opt.lam, "highest weight lambda as comma-separated labels");
    if (has("mu")) s->add_option("--mu", opt.mu, "highest weight mu of the finite module");
    if (has("nu")) s->add_option("--nu", opt.nu, "highest weight nu of the target module");
    if (has("layer")) s->add_option("--layer", opt.layer, "layer to search");
    if (has("bound")) s->add_option("--bound", opt.bound, "power bound B");
    if (has("weyl")) s->add_flag("--weyl", opt.weyl, "use the Weyl module instead of the irreducible quotient");
    if (has("tmin")) s->add_option("--tmin", opt.tmin, "lowest t-power");
    if (has("tmax")) s->add_option("--tmax", opt.tmax, "highest t-power");
    if (has("z")) s->add_option("--z", opt.z, "nonzero evaluation point p/q")->capture_default_str();
    subs[info.name] = s;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  std::string name;
  for (const auto& [n, s] : subs)
    if (s->parsed()) name = n;

  auto start = std::chrono::steady_clock::now();
  affrep::cli::CommandResult res;
  try {
    res = affrep::cli::run_command(name, opt);
  } catch (const affrep::Error& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return 2;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text = res.report.dump(2) + "\n";
  if (out.empty()) {
    if (const char* dir = std::getenv("AFFREP_OUT_DIR"); dir && *dir)
      out = (std::filesystem::path(dir) / (name + ".json")).string();
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << name << ": cannot write '" << out << "'\n";
      return 2;
    }
    f << text;
  }
  // Timing stays off the report so reruns are byte-identical.
  std::cerr << name << ": " << (res.passed ? "pass" : "FAIL") << " in " << secs << " s\n";
  return res.passed ? 0 : 1;
}
