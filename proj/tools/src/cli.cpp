#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include "umbilic/classifier.hpp"
#include "umbilic/constructor.hpp"
#include "umbilic/errors.hpp"
#include "verify.hpp"

namespace umbilic::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyArgs {
  std::vector<double> unimodular;
  std::vector<double> nonunimodular;
  bool exact = false;

  void attach(CLI::App* cmd) {
    auto* u = cmd->add_option("--unimodular", unimodular, "structure constants c1 c2 c3")
                  ->expected(3)
                  ->allow_extra_args(false);
    auto* n = cmd->add_option("--nonunimodular", nonunimodular, "parameters a b")
                  ->expected(2)
                  ->allow_extra_args(false);
    u->excludes(n);
    cmd->add_flag("--exact", exact, "bitwise-exact branch conditions");
  }

  BranchTolerance tolerance() const { return {1e-9, exact}; }

  ClassificationReport classify() const {
    for (double v : unimodular)
      if (!std::isfinite(v)) throw ParameterOutOfRange("structure constants must be finite");
    for (double v : nonunimodular)
      if (!std::isfinite(v)) throw ParameterOutOfRange("parameters must be finite");
    if (!unimodular.empty())
      return classify_unimodular({unimodular[0], unimodular[1], unimodular[2]}, tolerance());
    if (!nonunimodular.empty())
      return classify_nonunimodular({nonunimodular[0], nonunimodular[1]}, tolerance());
    throw UsageError("one of --unimodular or --nonunimodular is required");
  }
};

std::map<std::string, double> key_values(const std::vector<std::string>& items,
                                         const std::vector<std::string>& allowed) {
  std::map<std::string, double> kv;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw UsageError("unknown key '" + key + "'");
    try {
      std::size_t used = 0;
      const double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      kv[key] = v;
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  return kv;
}

double require_key(const std::map<std::string, double>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw UsageError("missing " + key + "=<value>");
  return it->second;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

double max_relative_residual(const SurfacePatch& s, const std::vector<GridRow>& rows) {
  double worst = 0.0;
  for (const GridRow& r : rows)
    worst = std::max(worst, shape_operator(s, r.u, r.v).relative_residual());
  return worst;
}

struct Written {
  std::filesystem::path profile, grid;
  std::size_t samples;
  double y_min, y_max, residual;
};

Written write_profile_files(const UmbilicProfile& p, const std::filesystem::path& profile_path,
                            const std::filesystem::path& grid_path, int nu, int nv) {
  {
    std::ofstream f = open_output(profile_path);
    write_profile_csv(f, p);
  }
  const SurfacePatch s = build_invariant_surface(p);
  const std::vector<GridRow> rows = sample_grid(s, nu, nv);
  {
    std::ofstream f = open_output(grid_path);
    write_grid_csv(f, rows);
  }
  return {profile_path, grid_path, p.samples().size(), p.y_min(), p.y_max(),
          max_relative_residual(s, rows)};
}

void print_written(std::ostream& out, const Written& w) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "wrote %s (%zu samples, y in [%.6f, %.6f]) and %s; max relative umbilicity "
                "residual %.3e\n",
                w.profile.string().c_str(), w.samples, w.y_min, w.y_max, w.grid.string().c_str(),
                w.residual);
  out << buf;
}

std::filesystem::path grid_path_for(std::filesystem::path p) {
  return p.replace_extension(".grid.csv");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Totally umbilical surfaces in three-dimensional metric Lie groups", "umbilic"};
  app.require_subcommand(1);

  FamilyArgs classify_args;
  std::string classify_format = "json";
  auto* classify = app.add_subcommand("classify", "classify a metric Lie group");
  classify_args.attach(classify);
  classify->add_option("--format", classify_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> profile_kv, shooting_kv;
  std::string direction = "x", out_path;
  double step = 1e-3, y_max = 5.0;
  std::vector<int> grid{21, 41};
  auto* construct = app.add_subcommand("construct", "integrate an invariant umbilic profile");
  auto* profile_opt =
      construct->add_option("--profile", profile_kv, "a=<a> lambda=<lambda>")->expected(2);
  auto* shooting_opt =
      construct->add_option("--shooting", shooting_kv, "c=<c> [z0=<z0>]")->expected(1, 2);
  profile_opt->excludes(shooting_opt);
  construct->add_option("--direction", direction, "x or y (closed-form profiles)")
      ->check(CLI::IsMember({"x", "y"}));
  construct->add_option("--step", step, "RK4 step");
  construct->add_option("--y-max", y_max, "integration half-range");
  construct->add_option("--grid", grid, "surface grid size nu nv")->expected(2);
  construct->add_option("--out", out_path, "profile CSV path; the grid goes to *.grid.csv")
      ->required();

  std::uint64_t seed = 1;
  int samples = 200;
  std::string corrupt, verify_format = "text";
  auto* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--samples", samples, "random samples per property")
      ->check(CLI::PositiveNumber);
  verify->add_option("--corrupt", corrupt)->group("")->check(CLI::IsMember(corruptible_properties()));
  verify->add_option("--format", verify_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  FamilyArgs report_args;
  std::string report_dir;
  auto* report = app.add_subcommand("report", "JSON report plus CSV data for each profile family");
  report_args.attach(report);
  report->add_option("--out", report_dir, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) {
      const ClassificationReport r = classify_args.classify();
      if (classify_format == "json") {
        out << to_json(r) << "\n";
      } else {
        out << "family,case,group_label,surfaces,lcf\n"
            << (r.family == FamilyKind::Unimodular ? "unimodular" : "non-unimodular") << ','
            << r.case_tag << ',' << r.group_label << ',' << r.surfaces.size() << ','
            << (r.locally_conformally_flat ? "true" : "false") << "\n";
      }
      return kExitOk;
    }

    if (*construct) {
      std::optional<UmbilicProfile> p;
      if (*profile_opt) {
        const auto kv = key_values(profile_kv, {"a", "lambda"});
        p = solve_profile_closed(require_key(kv, "a"), require_key(kv, "lambda"), y_max, step,
                                 direction == "x" ? InvarianceDirection::X : InvarianceDirection::Y);
      } else if (*shooting_opt) {
        const auto kv = key_values(shooting_kv, {"c", "z0"});
        const auto z0 = kv.find("z0");
        p = solve_profile_shooting(require_key(kv, "c"), z0 == kv.end() ? 0.0 : z0->second, step,
                                   y_max);
      } else {
        throw UsageError("one of --profile or --shooting is required");
      }
      if (grid[0] < 2 || grid[1] < 2) throw UsageError("--grid needs at least 2 x 2 points");
      print_written(out, write_profile_files(*p, out_path, grid_path_for(out_path), grid[0], grid[1]));
      return kExitOk;
    }

    if (*verify) {
      if (const char* env = std::getenv("UMBILIC_SEED")) {
        try {
          seed = std::stoull(env);
        } catch (const std::exception&) {
          throw UsageError("UMBILIC_SEED is not an unsigned integer");
        }
      }
      const auto results = run_property_suite({seed, samples, corrupt});
      if (verify_format == "csv") {
        out << "property,kind,value,bound,pass\n";
        char buf[256];
        for (const PropertyResult& r : results) {
          std::snprintf(buf, sizeof buf, "%s,%s,%.12e,%.12e,%s\n", r.name.c_str(),
                        r.kind == Bound::AtMost ? "max" : "min", r.value, r.bound,
                        r.pass() ? "true" : "false");
          out << buf;
        }
      } else {
        write_table(out, results);
      }
      const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass(); });
      return ok ? kExitOk : kExitFailure;
    }

    if (*report) {
      const ClassificationReport r = report_args.classify();
      const std::filesystem::path dir(report_dir);
      std::filesystem::create_directories(dir);
      {
        std::ofstream f = open_output(dir / "report.json");
        f << to_json(r) << "\n";
      }
      out << "wrote " << (dir / "report.json").string() << "\n";
      for (const SurfaceFamily& s : r.surfaces) {
        if (s.kind != SurfaceKind::InvariantUmbilicProfile) continue;
        const auto& model = std::get<std::string>(*s.descriptor.find("model"));
        if (model == "diag(1,c)") {
          const UmbilicProfile p = solve_profile_shooting(-1.0, 0.0, step, y_max);
          print_written(out, write_profile_files(p, dir / "profile_sol3.csv",
                                                 dir / "profile_sol3.grid.csv", grid[0], grid[1]));
        } else {
          const double a = std::get<double>(*s.descriptor.find("a"));
          const bool x = std::get<std::string>(*s.descriptor.find("direction")) == "x-invariant";
          const UmbilicProfile p = solve_profile_closed(
              a, 1.0, y_max, step, x ? InvarianceDirection::X : InvarianceDirection::Y);
          const std::string stem = x ? "profile_x" : "profile_y";
          print_written(out, write_profile_files(p, dir / (stem + ".csv"),
                                                 dir / (stem + ".grid.csv"), grid[0], grid[1]));
        }
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterOutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RootFindingFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitRootFinding;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace umbilic::cli
