// Command-line front end. All math goes through the C API in sqz/sqz_c.h;
// this file only parses flags, assembles requests and formats reports.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "sqz/sqz_c.h"

using nlohmann::json;

namespace {

struct CommonArgs {
  std::string spec_path;
  std::string out_path = "-";
  std::string format = "json";
  uint64_t seed = 20240801ULL;
  int samples = 2000;
  double tol = 1e-8;
  int jobs = 1;
};

struct CliError {
  int exit_code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{1, "cannot read file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{1, "cannot write file: " + path};
  out << text << "\n";
}

std::vector<double> parse_interleaved(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      vals.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError{1, "cannot parse coordinate '" + item + "' in point string"};
    }
  }
  if (vals.empty() || vals.size() % 2 != 0)
    throw CliError{1, "point must be a comma-separated even list of re,im floats"};
  return vals;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CliError{1, "cannot parse number '" + item + "'"};
    }
  }
  if (vals.empty()) throw CliError{1, "empty numeric list"};
  return vals;
}

class string_guard {
 public:
  explicit string_guard(char* s = nullptr) : s_(s) {}
  ~string_guard() { sqz_string_free(s_); }
  string_guard(const string_guard&) = delete;
  string_guard& operator=(const string_guard&) = delete;
  char** slot() {
    sqz_string_free(s_);
    s_ = nullptr;
    return &s_;
  }
  std::string str() const { return s_ ? std::string(s_) : std::string(); }

 private:
  char* s_;
};

struct poly_guard {
  sqz_poly* p = nullptr;
  ~poly_guard() { sqz_poly_free(p); }
};

struct domain_guard {
  sqz_domain* d = nullptr;
  ~domain_guard() { sqz_domain_free(d); }
};

[[noreturn]] void raise_api_error(sqz_status st) {
  throw CliError{int(st) == int(SQZ_ERR_ARGUMENT) ? 1 : int(st), sqz_last_error()};
}

void check(sqz_status st) {
  if (st != SQZ_OK) raise_api_error(st);
}

// The output path is deliberately not echoed: it does not influence the
// computation and would break byte-identity across runs targeting
// different files.
json resolved_config(const CommonArgs& a, const std::string& command, const json& extra) {
  json cfg{{"command", command}, {"spec", a.spec_path}, {"format", a.format},
           {"seed", a.seed},     {"samples", a.samples}, {"tol", a.tol},
           {"jobs", a.jobs}};
  for (auto it = extra.begin(); it != extra.end(); ++it) cfg[it.key()] = it.value();
  return cfg;
}

void emit_report(const CommonArgs& a, const std::string& command, const json& extra,
                 const json& report) {
  json wrapped{{"config", resolved_config(a, command, extra)}, {"report", report}};
  write_output(a.out_path, wrapped.dump(2));
}

// Fixed sweep columns: re/im per coordinate, bound, method, lambda, delta,
// d, r, R. Cells a method does not produce stay empty.
std::string sweep_to_csv(const std::vector<json>& reports) {
  size_t coords = 0;
  for (const auto& r : reports) coords = std::max(coords, r.at("point").size() / 2);
  std::ostringstream os;
  for (size_t i = 0; i < coords; ++i) os << "re" << i << ",im" << i << ",";
  os << "bound,method,lambda,delta,d,r,R";
  auto cell = [](const json& trace, const char* key) {
    return trace.contains(key) ? trace.at(key).dump() : std::string();
  };
  for (const auto& r : reports) {
    os << "\n";
    const auto& pt = r.at("point");
    for (size_t i = 0; i < coords; ++i) {
      if (2 * i + 1 < pt.size())
        os << pt[2 * i].dump() << "," << pt[2 * i + 1].dump() << ",";
      else
        os << ",,";
    }
    const json& trace = r.at("trace");
    os << r.at("bound").dump() << "," << r.at("method").get<std::string>() << ","
       << cell(trace, "lambda") << "," << cell(trace, "delta") << "," << cell(trace, "d") << ","
       << cell(trace, "r") << "," << cell(trace, "R");
  }
  return os.str();
}

int poly_dim_from_spec(const std::string& spec_text) {
  const json j = json::parse(spec_text);
  return j.at("n").get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified squeezing-function lower bounds for weighted complex ellipsoids"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string point_str, method = "lemma21", map_kind = "cayley", points_file, mode = "radial";
  std::string a_str = "0,0", eps_grid_str = "0.5,0.2,0.1";
  double exclusion = 0.1, theta = 0.0, lambda = 1.0, r_flag = 1.0, rp_flag = 0.5, c_flag = 1.0;
  int count = 50, sigma_samples = 24;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", common.spec_path, "domain/polynomial spec (JSON)")->required();
    cmd->add_option("--out", common.out_path, "output path, '-' for stdout");
    cmd->add_option("--format", common.format, "json|csv (csv only for sweep)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", common.seed, "RNG seed");
    cmd->add_option("--samples", common.samples, "sample budget");
    cmd->add_option("--tol", common.tol, "classification tolerance");
    cmd->add_option("--jobs", common.jobs, "worker threads for sampling loops");
  };

  auto* validate_cmd = app.add_subcommand("validate", "validate a polynomial spec");
  add_common(validate_cmd);

  auto* wb_cmd = app.add_subcommand("wb-check", "certify strong pseudoconvexity off the degenerate circle");
  add_common(wb_cmd);
  wb_cmd->add_option("--exclusion", exclusion, "weighted exclusion radius sigma(z') >= value");

  auto* levi_cmd = app.add_subcommand("levi", "restricted Levi eigenvalues at a boundary point");
  add_common(levi_cmd);
  levi_cmd->add_option("--point", point_str, "boundary point re,im,...")->required();

  auto* bound_cmd = app.add_subcommand("bound", "squeezing lower bound at a point");
  add_common(bound_cmd);
  bound_cmd->add_option("--method", method, "lemma21|slice|extreme")
      ->check(CLI::IsMember({"lemma21", "slice", "extreme"}));
  bound_cmd->add_option("--point", point_str, "point re,im,...")->required();
  bound_cmd->add_option("--r", r_flag, "horosphere parameter (extreme)");
  bound_cmd->add_option("--rp", rp_flag, "approach parameter r' (extreme)");
  bound_cmd->add_option("--c", c_flag, "cone aperture (extreme)");
  bound_cmd->add_option("--sigma-samples", sigma_samples, "sample budget for the uniform constant");

  auto* sweep_cmd = app.add_subcommand("sweep", "bounds over many points (JSON or CSV)");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--method", method, "lemma21|slice|extreme")
      ->check(CLI::IsMember({"lemma21", "slice", "extreme"}));
  sweep_cmd->add_option("--points-file", points_file, "JSON array of interleaved points");
  sweep_cmd->add_option("--r", r_flag, "horosphere parameter (extreme)");
  sweep_cmd->add_option("--rp", rp_flag, "approach parameter r' (extreme)");
  sweep_cmd->add_option("--c", c_flag, "cone aperture (extreme)");
  sweep_cmd->add_option("--sigma-samples", sigma_samples, "sample budget for the uniform constant");

  auto* maps_cmd = app.add_subcommand("maps-verify", "numerically verify a holomorphic map");
  add_common(maps_cmd);
  maps_cmd->add_option("--map", map_kind, "cayley|automorphism|dilation|normalization")
      ->check(CLI::IsMember({"cayley", "automorphism", "dilation", "normalization"}));
  maps_cmd->add_option("--a", a_str, "automorphism parameter re,im");
  maps_cmd->add_option("--theta", theta, "automorphism rotation");
  maps_cmd->add_option("--lambda", lambda, "dilation scale");

  auto* orbit_cmd = app.add_subcommand("orbit-trace", "slice-orbit diagnostics for a point sequence");
  add_common(orbit_cmd);
  orbit_cmd->add_option("--points-file", points_file, "JSON array of interleaved points");
  orbit_cmd->add_option("--count", count, "generated sequence length");
  orbit_cmd->add_option("--mode", mode, "radial|tangential generator")
      ->check(CLI::IsMember({"radial", "tangential"}));

  auto* hhr_cmd = app.add_subcommand("hhr-scan", "uniform bounds on compact slice sections");
  add_common(hhr_cmd);
  hhr_cmd->add_option("--eps-grid", eps_grid_str, "comma list of section margins in (0,1]");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();

  try {
    sqz_set_jobs(common.jobs);
    const std::string spec_text = read_file(common.spec_path);

    if (command == "validate") {
      string_guard rep;
      const sqz_status st = sqz_validate_json(spec_text.c_str(), rep.slot());
      if (st != SQZ_OK) raise_api_error(st);
      const json report = json::parse(rep.str());
      emit_report(common, command, {}, report);
      return report.at("valid").get<bool>() ? 0 : 2;
    }

    if (command == "wb-check") {
      domain_guard dom;
      check(sqz_domain_from_json(spec_text.c_str(), &dom.d));
      string_guard rep;
      const sqz_status st = sqz_wb_check(dom.d, exclusion, common.samples, common.seed, common.tol,
                                         rep.slot());
      if (st != SQZ_OK && rep.str().empty()) raise_api_error(st);
      emit_report(common, command, {{"exclusion", exclusion}}, json::parse(rep.str()));
      return int(st);
    }

    if (command == "levi") {
      domain_guard dom;
      check(sqz_domain_from_json(spec_text.c_str(), &dom.d));
      const auto pt = parse_interleaved(point_str);
      string_guard rep;
      check(sqz_levi_report(dom.d, pt.data(), pt.size(), common.tol, rep.slot()));
      emit_report(common, command, {{"point", point_str}}, json::parse(rep.str()));
      return 0;
    }

    if (command == "bound" || command == "sweep") {
      std::vector<std::vector<double>> points;
      json extra{{"method", method}};
      if (command == "bound") {
        points.push_back(parse_interleaved(point_str));
        extra["point"] = point_str;
      } else if (!points_file.empty()) {
        const json pts = json::parse(read_file(points_file));
        if (!pts.is_array()) throw CliError{1, "points file must hold a JSON array of points"};
        for (const auto& p : pts) points.push_back(p.get<std::vector<double>>());
        extra["points_file"] = points_file;
      }

      poly_guard poly;
      domain_guard dom;
      check(sqz_poly_from_json(spec_text.c_str(), &poly.p));
      check(sqz_domain_from_json(spec_text.c_str(), &dom.d));

      if (command == "sweep" && points.empty()) {
        const int n = poly_dim_from_spec(spec_text);
        std::vector<double> buf(size_t(common.samples) * 2 * n);
        check(sqz_domain_sample_interior(dom.d, common.samples, common.seed, buf.data()));
        for (int i = 0; i < common.samples; ++i)
          points.emplace_back(buf.begin() + size_t(i) * 2 * n, buf.begin() + size_t(i + 1) * 2 * n);
      }
      if (method == "extreme") {
        extra["r"] = r_flag;
        extra["rp"] = rp_flag;
        extra["c"] = c_flag;
        extra["sigma_samples"] = sigma_samples;
      }

      std::vector<json> reports;
      sqz_status worst = SQZ_OK;
      for (const auto& pt : points) {
        string_guard rep;
        sqz_status st;
        if (method == "extreme")
          st = sqz_bound_extreme(poly.p, r_flag, rp_flag, c_flag, pt.data(), pt.size(),
                                 sigma_samples, common.seed, rep.slot());
        else
          st = sqz_bound(dom.d, method == "slice" ? "slice" : "lemma21", pt.data(), pt.size(),
                         common.seed, rep.slot());
        if (st != SQZ_OK && rep.str().empty()) raise_api_error(st);
        if (st != SQZ_OK && worst == SQZ_OK) worst = st;
        reports.push_back(json::parse(rep.str()));
      }

      if (command == "bound") {
        emit_report(common, command, extra, reports.front());
      } else if (common.format == "csv") {
        write_output(common.out_path, sweep_to_csv(reports));
      } else {
        emit_report(common, command, extra, json(reports));
      }
      return int(worst);
    }

    if (command == "maps-verify") {
      domain_guard dom;
      check(sqz_domain_from_json(spec_text.c_str(), &dom.d));
      json map_desc{{"map", map_kind}};
      if (map_kind == "automorphism") {
        const auto av = parse_interleaved(a_str);
        if (av.size() != 2) throw CliError{1, "automorphism parameter --a must be re,im"};
        map_desc["a"] = av;
        map_desc["theta"] = theta;
      }
      if (map_kind == "dilation" || map_kind == "normalization") map_desc["lambda"] = lambda;
      string_guard rep;
      check(sqz_maps_verify(dom.d, map_desc.dump().c_str(), common.samples, common.seed, rep.slot()));
      emit_report(common, command, {{"map", map_desc}}, json::parse(rep.str()));
      return 0;
    }

    if (command == "orbit-trace") {
      domain_guard dom;
      check(sqz_domain_from_json(spec_text.c_str(), &dom.d));
      std::vector<double> flat;
      size_t dpp = 0;
      json extra;
      if (!points_file.empty()) {
        const json pts = json::parse(read_file(points_file));
        for (const auto& p : pts) {
          const auto v = p.get<std::vector<double>>();
          if (dpp == 0) dpp = v.size();
          if (v.size() != dpp) throw CliError{1, "points of mixed dimension in points file"};
          flat.insert(flat.end(), v.begin(), v.end());
        }
        extra["points_file"] = points_file;
      } else {
        // built-in sequences approaching the degenerate circle at angle 0:
        // radial keeps z' = 0; tangential pins the polynomial level to the
        // defining gap so the slice images drift to the rim
        const json spec = json::parse(spec_text);
        const int n = spec.at("n").get<int>();
        const auto m = spec.at("m").get<std::vector<int>>();
        dpp = 2 * size_t(n);
        poly_guard poly;
        check(sqz_poly_from_json(spec_text.c_str(), &poly.p));
        std::vector<double> u0(2 * size_t(n - 1), 0.0);
        u0[0] = 1.0;
        double pu0 = 0.0;
        check(sqz_poly_evaluate(poly.p, u0.data(), u0.size(), &pu0));
        for (int jj = 2; jj < count + 2; ++jj) {
          const double s = 1.0 - 1.0 / double(jj);
          std::vector<double> pt(dpp, 0.0);
          if (mode == "tangential") {
            const double target = s * (1.0 - s * s);  // P(a') = s (1 - |a_n|^2)
            const double t = target / pu0;
            for (int j2 = 0; j2 < n - 1; ++j2) {
              const double f = std::pow(t, 1.0 / (2.0 * m[size_t(j2)]));
              pt[2 * size_t(j2)] = u0[2 * size_t(j2)] * f;
              pt[2 * size_t(j2) + 1] = u0[2 * size_t(j2) + 1] * f;
            }
          }
          pt[dpp - 2] = s;  // a_n = 1 - 1/j on the positive real axis
          flat.insert(flat.end(), pt.begin(), pt.end());
        }
        extra["mode"] = mode;
        extra["count"] = count;
      }
      string_guard rep;
      check(sqz_orbit_trace(dom.d, flat.data(), flat.size() / dpp, dpp, rep.slot()));
      emit_report(common, command, extra, json::parse(rep.str()));
      return 0;
    }

    if (command == "hhr-scan") {
      domain_guard dom;
      check(sqz_domain_from_json(spec_text.c_str(), &dom.d));
      const auto grid = parse_double_list(eps_grid_str);
      string_guard rep;
      check(sqz_hhr_scan(dom.d, grid.data(), grid.size(), common.samples, common.seed, rep.slot()));
      emit_report(common, command, {{"eps_grid", eps_grid_str}}, json::parse(rep.str()));
      return 0;
    }

    throw CliError{1, "unknown command: " + command};
  } catch (const CliError& e) {
    json err{{"error", {{"exit_code", e.exit_code}, {"message", e.message}}}};
    try {
      write_output(common.out_path, err.dump(2));
    } catch (...) {
      std::cerr << err.dump(2) << std::endl;
    }
    std::cerr << "error: " << e.message << std::endl;
    return e.exit_code;
  } catch (const json::parse_error& e) {
    json err{{"error", {{"exit_code", 1}, {"message", e.what()}}}};
    std::cerr << "error: " << e.what() << std::endl;
    try {
      write_output(common.out_path, err.dump(2));
    } catch (...) {
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
