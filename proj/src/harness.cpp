#include "lsv/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lsv/errors.hpp"
#include "lsv/exponents.hpp"
#include "lsv/models.hpp"
#include "lsv/rng.hpp"
#include "lsv/spectral.hpp"

namespace lsv {

namespace {

constexpr u64 kStreamTails = 9;

}  // namespace

std::string experiment_model_name(ExperimentModel m) {
  switch (m) {
    case ExperimentModel::IidRademacher: return "iid_rademacher";
    case ExperimentModel::RowRegular: return "row_regular";
    case ExperimentModel::GaussianBaseline: return "gaussian_baseline";
  }
  throw PreconditionError("experiment model", "unknown enum value");
}

ExperimentModel experiment_model_from_name(const std::string& name) {
  if (name == "iid_rademacher") return ExperimentModel::IidRademacher;
  if (name == "row_regular") return ExperimentModel::RowRegular;
  if (name == "gaussian_baseline") return ExperimentModel::GaussianBaseline;
  throw PreconditionError("experiment model", "unknown name '" + name + "'");
}

void ExperimentConfig::check_invariants() const {
  if (trials < 1) throw PreconditionError("trials >= 1", "");
  if (n_list.empty()) throw PreconditionError("n_list nonempty", "");
  for (int n : n_list) {
    if (n < 1) throw PreconditionError("n >= 1", "");
    if (model == ExperimentModel::RowRegular && n % 2 != 0) {
      throw PreconditionError("n even for the row-regular model",
                              "n = " + std::to_string(n));
    }
  }
  if (eta_grid.empty()) throw PreconditionError("eta_grid nonempty", "");
  for (double eta : eta_grid) {
    if (!(eta >= 0)) throw PreconditionError("eta >= 0", "");
  }
  if (!std::is_sorted(eta_grid.begin(), eta_grid.end())) {
    throw PreconditionError("eta_grid sorted", "");
  }
  if (!(tol > 0)) throw PreconditionError("tol > 0", "");
  ExponentProfile::by_name(profile);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("config json", e.what());
  }
  ExperimentConfig c;
  try {
    if (j.contains("model")) {
      c.model = experiment_model_from_name(j.at("model").get<std::string>());
    }
    if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<int>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<i64>();
    if (j.contains("eta_grid")) {
      c.eta_grid = j.at("eta_grid").get<std::vector<double>>();
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<u64>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("profile")) c.profile = j.at("profile").get<std::string>();
    if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("config json", e.what());
  }
  c.check_invariants();
  return c;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["model"] = experiment_model_name(config.model);
  j["n_list"] = config.n_list;
  j["trials"] = config.trials;
  j["eta_grid"] = config.eta_grid;
  j["seed"] = config.seed;
  j["tol"] = config.tol;
  j["profile"] = config.profile;
  j["out"] = config.out_path;
  return j.dump(2) + "\n";
}

namespace {

double reference_value(ExperimentModel model, int n, double eta) {
  const double nd = n;
  switch (model) {
    case ExperimentModel::IidRademacher: return eta * std::pow(nd, 1.5);
    case ExperimentModel::RowRegular: return eta * nd * nd;
    case ExperimentModel::GaussianBaseline: {
      // the n -> infinity law at eps = eta sqrt(n)
      const double eps = eta * std::sqrt(nd);
      return 1.0 - std::exp(-eps * eps / 2.0 - eps);
    }
  }
  return 0;
}

}  // namespace

TailCurve run_tail_experiment(const ExperimentConfig& config,
                              ExecPolicy policy) {
  config.check_invariants();
  const bool integer_model = config.model != ExperimentModel::GaussianBaseline;
  const bool want_exact =
      integer_model &&
      std::any_of(config.eta_grid.begin(), config.eta_grid.end(),
                  [](double e) { return e == 0; });

  TailCurve curve;
  CounterRng root(config.seed, kStreamTails);
  for (int n : config.n_list) {
    CounterRng nroot = root.substream(static_cast<u64>(n));
    const i64 trials = config.trials;
    std::vector<double> smin(static_cast<size_t>(trials), 0.0);
    std::vector<std::uint8_t> singular(static_cast<size_t>(trials), 0);
    std::vector<std::uint8_t> nonconv(static_cast<size_t>(trials), 0);

    for_each_index(trials, policy, [&](i64 t) {
      const u64 ms = nroot.substream(static_cast<u64>(t)).next_u64();
      SpectralSummary sum;
      if (config.model == ExperimentModel::GaussianBaseline) {
        sum = smallest_singular_value(sample_gaussian(n, ms), config.tol);
      } else {
        const IntMatrix m = config.model == ExperimentModel::IidRademacher
                                ? sample_rademacher(n, ms)
                                : sample_row_regular(n, ms);
        if (want_exact) {
          singular[static_cast<size_t>(t)] = exact_singularity(m) ? 1 : 0;
        }
        sum = smallest_singular_value(m.to_real(), config.tol);
      }
      smin[static_cast<size_t>(t)] = sum.s_min;
      nonconv[static_cast<size_t>(t)] = sum.converged ? 0 : 1;
    });

    i64 bad = 0;
    for (auto b : nonconv) bad += b;
    for (double eta : config.eta_grid) {
      TailCell cell;
      cell.model = config.model;
      cell.n = n;
      cell.eta = eta;
      cell.trials = trials;
      if (eta == 0 && integer_model) {
        for (auto s : singular) cell.hits += s;
      } else {
        for (double s : smin) {
          if (s <= eta) ++cell.hits;
        }
      }
      cell.p_hat = static_cast<double>(cell.hits) / static_cast<double>(trials);
      cell.se = cell.hits == 0
                    ? 1.0 - std::pow(0.05, 1.0 / static_cast<double>(trials))
                    : std::sqrt(cell.p_hat * (1.0 - cell.p_hat) /
                                static_cast<double>(trials));
      cell.reference = reference_value(config.model, n, eta);
      cell.nonconverged = bad;
      curve.cells.push_back(cell);
    }
  }
  return curve;
}

std::string fmt_double(double x) {
  if (x == 0) return "0";
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return buf;
}

std::string tail_curve_csv(const TailCurve& curve) {
  std::string out = "model,n,eta,trials,hits,p_hat,se,reference\n";
  for (const TailCell& c : curve.cells) {
    out += experiment_model_name(c.model);
    out += ',' + std::to_string(c.n);
    out += ',' + fmt_double(c.eta);
    out += ',' + std::to_string(c.trials);
    out += ',' + std::to_string(c.hits);
    out += ',' + fmt_double(c.p_hat);
    out += ',' + fmt_double(c.se);
    out += ',' + fmt_double(c.reference);
    out += '\n';
  }
  return out;
}

namespace {

// Exact i64 Bareiss for the enumeration loops: entries in {-1,0,1},
// n <= 5, so every intermediate is a minor bounded by Hadamard's
// n^(n/2) < 56. Returns the determinant.
i64 det_small(int n, std::array<i64, 25>& m) {
  i64 sign = 1, prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[static_cast<size_t>(k * n + k)] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r) {
        if (m[static_cast<size_t>(r * n + k)] != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return 0;
      for (int j = k; j < n; ++j) {
        std::swap(m[static_cast<size_t>(k * n + j)],
                  m[static_cast<size_t>(piv * n + j)]);
      }
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m[static_cast<size_t>(i * n + j)] =
            (m[static_cast<size_t>(i * n + j)] * m[static_cast<size_t>(k * n + k)] -
             m[static_cast<size_t>(i * n + k)] * m[static_cast<size_t>(k * n + j)]) /
            prev;
      }
    }
    prev = m[static_cast<size_t>(k * n + k)];
  }
  return sign * m[static_cast<size_t>((n - 1) * n + (n - 1))];
}

}  // namespace

Rat exact_singularity_frequency(int n, ExperimentModel model) {
  if (n < 1) throw PreconditionError("n >= 1", "");
  if (model == ExperimentModel::GaussianBaseline) {
    throw PreconditionError("discrete model",
                            "enumeration needs a finite entry alphabet");
  }
  if (model == ExperimentModel::IidRademacher) {
    if (n > 5) {
      throw BudgetError("singularity enumeration",
                        "2^(n^2) infeasible beyond n = 5");
    }
    const int cells = n * n;
    const u64 total = u64{1} << cells;
    i64 singular = 0;
    std::array<i64, 25> m{};
    for (u64 mask = 0; mask < total; ++mask) {
      for (int c = 0; c < cells; ++c) {
        m[static_cast<size_t>(c)] = (mask >> c) & 1 ? 1 : -1;
      }
      if (det_small(n, m) == 0) ++singular;
    }
    return Rat(singular, Int(1) << cells);
  }
  if (n % 2 != 0) throw PreconditionError("n even", "");
  if (n > 4) {
    throw BudgetError("singularity enumeration",
                      "C(n, n/2)^n infeasible beyond n = 4");
  }
  std::vector<u64> patterns;
  for (u64 row = 0; row < (u64{1} << n); ++row) {
    if (__builtin_popcountll(row) == n / 2) patterns.push_back(row);
  }
  const u64 count = patterns.size();
  Int total = 1;
  for (int i = 0; i < n; ++i) total *= count;
  i64 singular = 0;
  std::vector<u64> pick(static_cast<size_t>(n), 0);
  std::array<i64, 25> m{};
  while (true) {
    for (int i = 0; i < n; ++i) {
      const u64 row = patterns[static_cast<size_t>(pick[static_cast<size_t>(i)])];
      for (int j = 0; j < n; ++j) {
        m[static_cast<size_t>(i * n + j)] = (row >> j) & 1;
      }
    }
    if (det_small(n, m) == 0) ++singular;
    int pos = n - 1;
    while (pos >= 0 && ++pick[static_cast<size_t>(pos)] == count) {
      pick[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return Rat(singular, total);
}

double union_bound_report_log(double c_of_n, i64 n, double rho_cap) {
  if (!(c_of_n > 0)) throw PreconditionError("C(n) > 0", "");
  if (!(rho_cap > 0)) throw PreconditionError("rho_cap > 0", "");
  if (n < 1) throw PreconditionError("n >= 1", "");
  return static_cast<double>(n) *
         (std::log(100.0 * c_of_n) + std::log(rho_cap));
}

std::string SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["pass"] = pass;
  auto arr = nlohmann::ordered_json::array();
  for (const CheckLine& c : checks) {
    nlohmann::ordered_json line;
    line["label"] = c.label;
    line["pass"] = c.pass;
    line["detail"] = c.detail;
    arr.push_back(line);
  }
  j["checks"] = arr;
  return j.dump(2) + "\n";
}

// ---------- plotting ----------

namespace {

struct CsvRow {
  std::string model;
  int n = 0;
  double eta = 0, p_hat = 0, reference = 0;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> f;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      f.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  f.push_back(cur);
  return f;
}

double parse_num(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw PreconditionError("csv schema", "bad number '" + s + "'");
  }
  return v;
}

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

}  // namespace

std::string emit_plot_svg(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "model,n,eta,trials,hits,p_hat,se,reference") {
    throw PreconditionError("csv schema",
                            "expected header model,n,eta,trials,hits,p_hat,"
                            "se,reference");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) {
      throw PreconditionError("csv schema", "row with " +
                                                std::to_string(f.size()) +
                                                " fields");
    }
    CsvRow r;
    r.model = f[0];
    r.n = static_cast<int>(parse_num(f[1]));
    r.eta = parse_num(f[2]);
    r.p_hat = parse_num(f[5]);
    r.reference = parse_num(f[7]);
    rows.push_back(r);
  }
  if (rows.empty()) throw PreconditionError("empty grid", "no data rows");

  // series keyed by (model, n) in first-appearance order
  std::vector<std::pair<std::string, int>> keys;
  for (const CsvRow& r : rows) {
    const std::pair<std::string, int> key{r.model, r.n};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      keys.push_back(key);
    }
  }

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (const CsvRow& r : rows) {
    if (r.eta <= 0) continue;
    for (double y : {r.p_hat, r.reference}) {
      if (y <= 0) continue;
      if (!any) {
        xmin = xmax = r.eta;
        ymin = ymax = y;
        any = true;
      } else {
        xmin = std::min(xmin, r.eta);
        xmax = std::max(xmax, r.eta);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (!any) {
    throw PreconditionError("empty grid", "no positive (eta, value) points");
  }
  const double lx0 = std::floor(std::log10(xmin));
  const double lx1 = std::ceil(std::log10(xmax) + (xmin == xmax ? 1 : 0));
  const double ly0 = std::floor(std::log10(ymin));
  const double ly1 = std::ceil(std::log10(ymax) + (ymin == ymax ? 1 : 0));

  constexpr double W = 760, H = 520, ML = 70, MR = 180, MT = 30, MB = 55;
  const double pw = W - ML - MR, ph = H - MT - MB;
  const auto px = [&](double x) {
    return ML + (std::log10(x) - lx0) / (lx1 - lx0) * pw;
  };
  const auto py = [&](double y) {
    return MT + ph - (std::log10(y) - ly0) / (ly1 - ly0) * ph;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_double(W) +
         "\" height=\"" + fmt_double(H) + "\" viewBox=\"0 0 " + fmt_double(W) +
         " " + fmt_double(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const auto num = [](double v) { return fmt_double(v); };
  // gridlines and tick labels at integer decades
  for (double d = lx0; d <= lx1 + 1e-9; d += 1) {
    const double x = px(std::pow(10.0, d));
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(MT) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(MT + ph) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(MT + ph + 18) +
           "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333333\">1e" +
           num(d) + "</text>\n";
  }
  for (double d = ly0; d <= ly1 + 1e-9; d += 1) {
    const double y = py(std::pow(10.0, d));
    svg += "<line x1=\"" + num(ML) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(ML + pw) + "\" y2=\"" + num(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(ML - 8) + "\" y=\"" + num(y + 4) +
           "\" font-size=\"12\" text-anchor=\"end\" fill=\"#333333\">1e" +
           num(d) + "</text>\n";
  }
  svg += "<rect x=\"" + num(ML) + "\" y=\"" + num(MT) + "\" width=\"" +
         num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg += "<text x=\"" + num(ML + pw / 2) + "\" y=\"" + num(H - 12) +
         "\" font-size=\"13\" text-anchor=\"middle\">eta</text>\n";
  svg += "<text x=\"16\" y=\"" + num(MT + ph / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(MT + ph / 2) + ")\">P(s_n &lt;= eta)</text>\n";

  size_t ci = 0;
  double legend_y = MT + 10;
  for (const auto& key : keys) {
    const char* color = kPalette[ci % kPalette.size()];
    ++ci;
    std::string pts, ref_pts;
    for (const CsvRow& r : rows) {
      if (r.model != key.first || r.n != key.second || r.eta <= 0) continue;
      if (r.p_hat > 0) {
        pts += num(px(r.eta)) + "," + num(py(r.p_hat)) + " ";
      }
      if (r.reference > 0) {
        ref_pts += num(px(r.eta)) + "," + num(py(r.reference)) + " ";
      }
    }
    if (!pts.empty()) {
      svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
             color + "\" stroke-width=\"2\"/>\n";
    }
    if (!ref_pts.empty()) {
      svg += "<polyline points=\"" + ref_pts + "\" fill=\"none\" stroke=\"" +
             color + "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }
    svg += "<line x1=\"" + num(ML + pw + 12) + "\" y1=\"" + num(legend_y) +
           "\" x2=\"" + num(ML + pw + 36) + "\" y2=\"" + num(legend_y) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(ML + pw + 42) + "\" y=\"" + num(legend_y + 4) +
           "\" font-size=\"12\">" + key.first + " n=" +
           std::to_string(key.second) + "</text>\n";
    legend_y += 20;
  }
  svg += "<text x=\"" + num(ML + pw + 12) + "\" y=\"" + num(legend_y + 4) +
         "\" font-size=\"11\" fill=\"#555555\">dashed: reference</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("file io", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PreconditionError("file io", "cannot write '" + path + "'");
  out << text;
  if (!out) throw PreconditionError("file io", "write failed for '" + path + "'");
}

}  // namespace lsv
