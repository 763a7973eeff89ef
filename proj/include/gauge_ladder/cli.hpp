// Copyright 2026 The gauge_ladder Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gauge_ladder/checks.hpp"
#include "gauge_ladder/dimensions.hpp"
#include "gauge_ladder/dynamics.hpp"
#include "gauge_ladder/error.hpp"
#include "gauge_ladder/io.hpp"
#include "gauge_ladder/models.hpp"
#include "gauge_ladder/projection.hpp"
#include "gauge_ladder/sectors.hpp"

namespace gauge_ladder::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kNumerical = 1, kConfig = 2, kEmpty = 3 };

struct RunConfig {
  std::string task = "spectrum";
  std::string model = "jcm";
  double omega_c = 1.0;
  double omega_a = 1.0;
  double rabi = 0.0;
  double g = 1.0;
  double mass = 0.0;
  double eps = 0.0;
  int sites = 2;
  int chain_m = -1;
  std::vector<std::string> sectors;
  int n_max = 8;
  std::string jmax;
  std::vector<std::string> windows;
  std::string source = "auto";
  bool eigenvectors = false;
  std::string output;
  std::string format = "csv";
  std::string preset;
  std::string initial;
  double t_max = -1.0;
  int n_steps = 399;
  std::string method = "auto";
  double perturb_hermiticity = 0.0;
  std::vector<std::string> checks;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline void to_json(json& j, const RunConfig& c) {
  j = json{{"task", c.task},
           {"model", c.model},
           {"omega_c", c.omega_c},
           {"omega_a", c.omega_a},
           {"rabi", c.rabi},
           {"g", c.g},
           {"mass", c.mass},
           {"eps", c.eps},
           {"sites", c.sites},
           {"chain_m", c.chain_m},
           {"sectors", c.sectors},
           {"n_max", c.n_max},
           {"jmax", c.jmax},
           {"windows", c.windows},
           {"source", c.source},
           {"eigenvectors", c.eigenvectors},
           {"output", c.output},
           {"format", c.format},
           {"preset", c.preset},
           {"initial", c.initial},
           {"t_max", c.t_max},
           {"n_steps", c.n_steps},
           {"method", c.method},
           {"perturb_hermiticity", c.perturb_hermiticity},
           {"checks", c.checks}};
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw Error(ErrorKind::invalid_model, "config must be a JSON object");
  static const std::vector<std::string> known = {
      "task",    "model",   "omega_c", "omega_a", "rabi",    "g",      "mass",
      "eps",     "sites",   "chain_m", "sectors", "n_max",   "jmax",   "windows",
      "source",  "eigenvectors", "output", "format", "preset", "initial", "t_max",
      "n_steps", "method",  "perturb_hermiticity", "checks"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorKind::invalid_model, "unknown config key '" + key + "'");
  auto get = [&](const char* k, auto& field) {
    if (j.contains(k)) j.at(k).get_to(field);
  };
  get("task", c.task);
  get("model", c.model);
  get("omega_c", c.omega_c);
  get("omega_a", c.omega_a);
  get("rabi", c.rabi);
  get("g", c.g);
  get("mass", c.mass);
  get("eps", c.eps);
  get("sites", c.sites);
  get("chain_m", c.chain_m);
  get("sectors", c.sectors);
  get("n_max", c.n_max);
  get("jmax", c.jmax);
  get("windows", c.windows);
  get("source", c.source);
  get("eigenvectors", c.eigenvectors);
  get("output", c.output);
  get("format", c.format);
  get("preset", c.preset);
  get("initial", c.initial);
  get("t_max", c.t_max);
  get("n_steps", c.n_steps);
  get("method", c.method);
  get("perturb_hermiticity", c.perturb_hermiticity);
  get("checks", c.checks);
}

/// Raised when a requested sector has no states.
class EmptyResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// threading

inline unsigned thread_limit() {
  if (const char* env = std::getenv("GAUGE_LADDER_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0..n-1) on up to thread_limit() workers; results keep index order
/// and the first failure by index is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min<std::size_t>(n, thread_limit());
  auto body = [&](std::size_t start) {
    for (std::size_t i = start; i < n; i += std::max<std::size_t>(workers, 1)) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------
// config -> library objects

inline ModelFamily family_of(const RunConfig& c) { return parse_model_family(c.model); }

inline void validate(const RunConfig& c) {
  auto one_of = [](const std::string& v, std::initializer_list<const char*> opts,
                   const char* what) {
    for (const char* o : opts)
      if (v == o) return;
    throw Error(ErrorKind::invalid_model, std::string("invalid ") + what + " '" + v + "'");
  };
  one_of(c.task, {"spectrum", "blocks", "dims", "evolve", "verify"}, "task");
  one_of(c.format, {"csv", "json"}, "format");
  one_of(c.source, {"auto", "analytic", "projected"}, "source");
  one_of(c.method, {"auto", "eigen", "krylov"}, "method");
  if (!c.preset.empty()) one_of(c.preset, {"fig3b", "fig3c"}, "preset");
  const auto fam = family_of(c);
  if (c.sites < 2 || c.sites % 2 != 0)
    throw Error(ErrorKind::invalid_model, "--sites must be even and at least 2");
  const bool link = fam == ModelFamily::jcm || fam == ModelFamily::u1_link ||
                    fam == ModelFamily::su2_link;
  if (link && c.sites != 2)
    throw Error(ErrorKind::invalid_model, c.model + " has exactly two sites");
  if (c.n_max < 1) throw Error(ErrorKind::invalid_model, "--n-max must be at least 1");
  if (c.n_steps < 1) throw Error(ErrorKind::invalid_model, "--n-steps must be at least 1");
  if (c.chain_m < -1) throw Error(ErrorKind::invalid_model, "--chain-m must be non-negative");
  for (const auto& name : c.checks)
    if (std::find(checks::check_names().begin(), checks::check_names().end(), name) ==
        checks::check_names().end())
      throw Error(ErrorKind::invalid_model, "unknown check '" + name + "'");
}

inline std::vector<U1LinkSpace> parse_windows(const std::vector<std::string>& w) {
  std::vector<U1LinkSpace> out;
  for (const auto& s : w) {
    const auto parts = io::split(s, ':');
    if (parts.size() != 2) throw Error(ErrorKind::invalid_model, "window must be lo:hi");
    out.push_back({io::parse_int(parts[0]), io::parse_int(parts[1])});
  }
  return out;
}

inline ModelSpec model_spec(const RunConfig& c) {
  ModelSpec s;
  s.family = family_of(c);
  s.n_sites = c.sites;
  s.jcm = {c.omega_c, c.omega_a, c.rabi};
  s.gauge = {c.g, c.mass, c.eps};
  s.photon_max = c.n_max;
  s.u1_windows = parse_windows(c.windows);
  if (!s.u1_windows.empty() && !is_u1(s.family))
    throw Error(ErrorKind::invalid_model, "--window applies to U(1) models");
  if (!c.jmax.empty()) {
    if (!is_su2(s.family)) throw Error(ErrorKind::invalid_model, "--jmax applies to SU(2) models");
    const auto parts = io::split(c.jmax, ',');
    for (const auto& p : parts) s.su2_jmax.push_back(HalfInt::parse(io::trim(p)));
    if (s.su2_jmax.size() == 1) s.su2_jmax.assign(s.n_sites - 1, s.su2_jmax.front());
  }
  return s;
}

/// "q=1", "q=1,-1,0,0", "jq=0", "jq=3/2", "jq=1/2;mq=1/2;nq=-1/2".
inline SectorKey parse_sector(ModelFamily fam, int n_sites, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw Error(ErrorKind::invalid_sector, "sector must look like q=... or jq=...");
  const std::string name = io::trim(text.substr(0, eq));
  if (!is_su2(fam)) {
    if (name != "q") throw Error(ErrorKind::invalid_sector, "U(1) sectors use q=...");
    const auto q = io::parse_int_list(text.substr(eq + 1));
    if (q.size() == 1 && fam != ModelFamily::u1_chain)
      return fam == ModelFamily::jcm ? jcm_sector(q[0]) : u1_link_sector(q[0]);
    if (q.size() == 1 && n_sites == 2) return u1_link_sector(q[0]);
    if (static_cast<int>(q.size()) != n_sites)
      throw Error(ErrorKind::invalid_sector,
                  "sector needs " + std::to_string(n_sites) + " charges, got " +
                      std::to_string(q.size()));
    auto key = u1_chain_sector(q);
    key.validate();
    return key;
  }
  HalfInt jq(0);
  std::optional<HalfInt> mq, nq;
  bool have_j = false;
  for (const auto& part : io::split(text, text.find(';') != std::string::npos ? ';' : ',')) {
    const auto e = part.find('=');
    if (e == std::string::npos) throw Error(ErrorKind::invalid_sector, "bad sector '" + text + "'");
    const std::string k = io::trim(part.substr(0, e));
    const HalfInt v = HalfInt::parse(io::trim(part.substr(e + 1)));
    if (k == "jq") {
      jq = v;
      have_j = true;
    } else if (k == "mq") {
      mq = v;
    } else if (k == "nq") {
      nq = v;
    } else {
      throw Error(ErrorKind::invalid_sector, "unknown sector label '" + k + "'");
    }
  }
  if (!have_j) throw Error(ErrorKind::invalid_sector, "SU(2) sectors need jq=...");
  // Highest weight unless given.
  const HalfInt m = mq.value_or(jq), n = nq.value_or(jq);
  if (jq.twice() < 0 || !detail::valid_projection(jq, m) || !detail::valid_projection(jq, n))
    throw Error(ErrorKind::invalid_sector, "bad SU(2) sector '" + text + "'");
  if (fam == ModelFamily::su2_chain && n_sites > 2) {
    if (jq.twice() != 0)
      throw Error(ErrorKind::invalid_sector, "SU(2) chains support the zero-charge sector");
    return su2_zero_sector(n_sites);
  }
  return su2_link_sector(jq, m, n);
}

inline std::vector<SectorKey> sectors_of(const RunConfig& c) {
  const auto fam = family_of(c);
  std::vector<std::string> texts = c.sectors;
  if (texts.empty()) {
    std::string t = is_su2(fam) ? "jq=0" : "q=0";
    if (fam == ModelFamily::u1_chain)
      for (int x = 1; x < c.sites; ++x) t += ",0";
    texts = {t};
  }
  std::vector<SectorKey> keys;
  for (const auto& t : texts) keys.push_back(parse_sector(fam, c.sites, t));
  return keys;
}

inline bool analytic_available(ModelFamily f) {
  return f == ModelFamily::jcm || f == ModelFamily::u1_link || f == ModelFamily::su2_link;
}

inline bool is_link_form(const SectorKey& k) {
  return k.charges.size() == 2 && k.charges[0] == -k.charges[1];
}

inline SectorBlock make_block(const RunConfig& c, const ModelSpec& spec, const SectorKey& key) {
  const bool analytic = c.source == "analytic" ||
                        (c.source == "auto" && analytic_available(spec.family));
  if (analytic) {
    switch (spec.family) {
      case ModelFamily::jcm:
        if (!is_link_form(key)) throw Error(ErrorKind::invalid_sector, "bad JCM sector");
        return jc_block(spec.jcm, key.charges[1]);
      case ModelFamily::u1_link:
        if (!is_link_form(key)) throw Error(ErrorKind::invalid_sector, "bad U(1) link sector");
        return u1_link_block(spec.gauge, key.charges[0]);
      case ModelFamily::su2_link: {
        const auto& s = key.su2;
        if (s[0].j.twice() == 0) return su2_block_zero(spec.gauge);
        return su2_block_charged(spec.gauge, s[0].j, s[0].m, s[1].m);
      }
      default:
        throw Error(ErrorKind::invalid_model,
                    "no closed-form blocks for chains; use --source projected");
    }
  }
  ModelSpec s = spec;
  if (s.family == ModelFamily::jcm) {
    const int q = key.charges.size() == 2 ? key.charges[1] : 0;
    if (q > s.photon_max)
      throw Error(ErrorKind::window_too_small, "photon cutoff n_max=" +
                                                   std::to_string(s.photon_max) +
                                                   " is below sector q=" + std::to_string(q));
  }
  if (is_u1(s.family)) s.static_charges = key.charges;
  return project_physical(build_model(s), key);
}

// ---------------------------------------------------------------------------
// output

inline json parameters_json(const RunConfig& c) {
  const auto fam = family_of(c);
  json p{{"model", c.model}, {"sites", c.sites}};
  if (fam == ModelFamily::jcm) {
    p["omega_c"] = c.omega_c;
    p["omega_a"] = c.omega_a;
    p["rabi"] = c.rabi;
    p["n_max"] = c.n_max;
  } else {
    p["g"] = c.g;
    p["mass"] = c.mass;
    p["eps"] = c.eps;
  }
  return p;
}

inline std::vector<std::vector<double>> complex_pairs(const Eigen::VectorXcd& v) {
  std::vector<std::vector<double>> out;
  for (Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

inline void require_nonempty(const std::vector<SectorBlock>& blocks) {
  for (const auto& b : blocks)
    if (b.empty()) throw EmptyResult("sector " + b.key.label + " has no physical states");
}

inline std::vector<SectorBlock> all_blocks(const RunConfig& c) {
  const auto spec = model_spec(c);
  const auto keys = sectors_of(c);
  auto blocks = parallel_map<SectorBlock>(
      keys.size(), [&](std::size_t i) { return make_block(c, spec, keys[i]); });
  require_nonempty(blocks);
  return blocks;
}

inline void cmd_spectrum(const RunConfig& c, std::ostream& os) {
  const auto blocks = all_blocks(c);
  const auto systems = parallel_map<EigenSystem>(
      blocks.size(), [&](std::size_t i) { return diagonalize(blocks[i], c.eigenvectors); });
  if (c.format == "csv") {
    if (c.eigenvectors) io::write_row(os, {"sector", "index", "energy", "basis", "re", "im"});
    else io::write_row(os, {"sector", "index", "energy"});
    for (std::size_t s = 0; s < blocks.size(); ++s) {
      const auto& es = systems[s];
      for (Index k = 0; k < es.values.size(); ++k) {
        const std::string e = io::format_double(es.values[k]);
        if (!c.eigenvectors) {
          io::write_row(os, {blocks[s].key.label, std::to_string(k), e});
          continue;
        }
        for (Index r = 0; r < es.vectors.rows(); ++r)
          io::write_row(os, {blocks[s].key.label, std::to_string(k), e, blocks[s].basis_labels[r],
                             io::format_double(es.vectors(r, k).real()),
                             io::format_double(es.vectors(r, k).imag())});
      }
    }
    return;
  }
  json doc{{"task", "spectrum"}, {"parameters", parameters_json(c)}, {"sectors", json::array()}};
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    json js{{"sector", blocks[s].key.label},
            {"provenance", to_string(blocks[s].provenance)},
            {"basis", blocks[s].basis_labels},
            {"energies", sorted_values(systems[s].values)}};
    if (c.eigenvectors) {
      json vecs = json::array();
      for (Index k = 0; k < systems[s].vectors.cols(); ++k)
        vecs.push_back(complex_pairs(systems[s].vectors.col(k)));
      js["eigenvectors"] = vecs;
    }
    doc["sectors"].push_back(js);
  }
  os << doc.dump(2) << '\n';
}

inline void cmd_blocks(const RunConfig& c, std::ostream& os) {
  const auto blocks = all_blocks(c);
  if (c.format == "csv") {
    io::write_row(os, {"sector", "row_label", "col_label", "re", "im"});
    for (const auto& b : blocks)
      for (Index r = 0; r < b.dim(); ++r)
        for (Index k = 0; k < b.dim(); ++k)
          io::write_row(os, {b.key.label, b.basis_labels[r], b.basis_labels[k],
                             io::format_double(b.matrix(r, k).real()),
                             io::format_double(b.matrix(r, k).imag())});
    return;
  }
  json doc{{"task", "blocks"}, {"parameters", parameters_json(c)}, {"sectors", json::array()}};
  for (const auto& b : blocks) {
    json re = json::array(), im = json::array();
    for (Index r = 0; r < b.dim(); ++r) {
      std::vector<double> rr, ii;
      for (Index k = 0; k < b.dim(); ++k) {
        rr.push_back(b.matrix(r, k).real());
        ii.push_back(b.matrix(r, k).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    doc["sectors"].push_back({{"sector", b.key.label},
                              {"provenance", to_string(b.provenance)},
                              {"basis", b.basis_labels},
                              {"matrix_re", re},
                              {"matrix_im", im}});
  }
  os << doc.dump(2) << '\n';
}

inline void cmd_dims(const RunConfig& c, std::ostream& os) {
  const auto fam = family_of(c);
  if (fam == ModelFamily::jcm) throw Error(ErrorKind::invalid_model, "dims needs a gauge model");
  const int big_m = c.chain_m >= 0 ? c.chain_m : chain_m_param(c.sites);
  const int n_sites = 2 * big_m + 2;
  const bool su2 = is_su2(fam);
  std::vector<BigInt> per_link;
  for (int n = 0; n <= 2 * big_m; ++n)
    per_link.push_back(su2 ? dim_su2(n, big_m) : dim_u1(n, big_m));
  const BigInt gauge = su2 ? d_gauge_su2(big_m) : d_gauge_u1(big_m);
  const BigInt bound = su2 ? bound_su2(big_m) : bound_u1(big_m);

  std::string exact;
  RunConfig sc = c;
  sc.sites = n_sites;
  sc.model = su2 ? "su2-chain" : "u1-chain";
  const auto keys = sectors_of(sc);
  if (keys.size() != 1) throw Error(ErrorKind::invalid_sector, "dims takes one sector");
  if (!su2 && n_sites <= 6) {
    exact = std::to_string(u1_enumerate_physical(n_sites, keys[0].charges).size());
  } else if (su2 && n_sites <= 4) {
    if (!keys[0].is_zero_su2())
      throw Error(ErrorKind::invalid_sector, "exact SU(2) dimensions cover the zero sector");
    ModelSpec s;
    s.family = ModelFamily::su2_chain;
    s.n_sites = n_sites;
    exact = std::to_string(project_physical(build_su2(s), keys[0]).dim());
  }

  if (c.format == "csv") {
    io::write_row(os, {"link", "dim_bound"});
    for (std::size_t n = 0; n < per_link.size(); ++n)
      io::write_row(os, {std::to_string(n), per_link[n].str()});
    io::write_row(os, {"D_gauge", "bound_total", "exact_physical"});
    io::write_row(os, {gauge.str(), bound.str(), exact});
    return;
  }
  json links = json::array();
  for (std::size_t n = 0; n < per_link.size(); ++n)
    links.push_back({{"link", n}, {"dim_bound", per_link[n].str()}});
  json doc{{"task", "dims"},
           {"group", su2 ? "SU(2)" : "U(1)"},
           {"M", big_m},
           {"sites", n_sites},
           {"sector", keys[0].label},
           {"links", links},
           {"D_gauge", gauge.str()},
           {"bound_total", bound.str()},
           {"exact_physical", exact.empty() ? json(nullptr) : json(std::stoll(exact))}};
  if (su2) {
    const auto printed = bound_su2_printed(big_m);
    doc["bound_printed_fraction"] = printed.numerator.str() + "/" + printed.denominator.str();
  }
  os << doc.dump(2) << '\n';
}

inline void cmd_evolve(const RunConfig& c, std::ostream& os) {
  SectorBlock block;
  std::string initial = c.initial;
  double t_max = c.t_max;
  json params;
  if (!c.preset.empty()) {
    const auto preset = c.preset == "fig3b" ? fig3b_preset() : fig3c_preset();
    block = su2_link_block(preset.params, preset.jq);
    if (initial.empty()) initial = preset.initial;
    if (t_max < 0.0 && initial == preset.initial)
      t_max = default_t_max(block, preset.initial, preset.partner);
    params = {{"preset", preset.name},
              {"model", "su2-link"},
              {"g", preset.params.g},
              {"mass", preset.params.mass},
              {"eps", preset.params.eps},
              {"jq", preset.jq.to_string()}};
  } else {
    const auto keys = sectors_of(c);
    if (keys.size() != 1) throw Error(ErrorKind::invalid_sector, "evolve takes one sector");
    block = make_block(c, model_spec(c), keys[0]);
    if (block.empty()) throw EmptyResult("sector " + keys[0].label + " has no physical states");
    if (initial.empty()) initial = block.basis_labels.front();
    params = parameters_json(c);
  }
  const Eigen::VectorXcd psi0 = basis_state(block, initial);
  if (t_max < 0.0) {
    const auto i = std::find(block.basis_labels.begin(), block.basis_labels.end(), initial) -
                   block.basis_labels.begin();
    double coupling = 0.0;
    for (Index r = 0; r < block.dim(); ++r)
      if (r != i) coupling = std::max(coupling, std::abs(block.matrix(r, i)));
    if (coupling == 0.0)
      throw Error(ErrorKind::invalid_model, "initial state is not coupled; pass --t-max");
    t_max = 2.0 * std::numbers::pi / coupling;
  }
  EvolveOptions opt;
  opt.method = c.method == "eigen"    ? EvolveMethod::eigen
               : c.method == "krylov" ? EvolveMethod::krylov
                                      : EvolveMethod::automatic;
  const auto r = evolve(block, psi0, uniform_times(t_max, c.n_steps), opt);
  if (r.max_norm_drift() > 1e-8) throw Error(ErrorKind::numerical, "norm drift above 1e-8");

  if (c.format == "csv") {
    std::vector<std::string> header{"t"};
    for (const auto& l : r.labels) header.push_back("pop_" + l);
    header.push_back("energy");
    io::write_row(os, header);
    for (std::size_t k = 0; k < r.times.size(); ++k) {
      std::vector<std::string> row{io::format_double(r.times[k])};
      for (double p : r.populations[k]) row.push_back(io::format_double(p));
      row.push_back(io::format_double(r.energy[k]));
      io::write_row(os, row);
    }
    return;
  }
  json pops = json::object();
  for (std::size_t s = 0; s < r.labels.size(); ++s) {
    std::vector<double> col;
    for (const auto& row : r.populations) col.push_back(row[s]);
    pops[r.labels[s]] = col;
  }
  json doc{{"task", "evolve"},
           {"parameters", params},
           {"sector", block.key.label},
           {"initial", initial},
           {"t_max", t_max},
           {"n_steps", c.n_steps},
           {"method", to_string(r.method)},
           {"times", r.times},
           {"populations", pops},
           {"energy", r.energy},
           {"max_norm_drift", r.max_norm_drift()},
           {"max_energy_drift", r.max_energy_drift()}};
  os << doc.dump(2) << '\n';
}

/// Returns true when every executed check passed.
inline bool cmd_verify(const RunConfig& c, std::ostream& os) {
  checks::CheckContext ctx{model_spec(c), c.perturb_hermiticity};
  const auto names = c.checks.empty() ? checks::check_names() : c.checks;
  const auto results = parallel_map<checks::CheckResult>(
      names.size(), [&](std::size_t i) { return checks::run_check(names[i], ctx); });
  bool ok = true;
  for (const auto& r : results) ok = ok && r.status != checks::Status::failed;
  if (c.format == "csv") {
    io::write_row(os, {"check", "status", "value", "tolerance"});
    for (const auto& r : results)
      io::write_row(os, {r.name, checks::to_string(r.status), io::format_double(r.value),
                         io::format_double(r.tolerance)});
    return ok;
  }
  json list = json::array();
  for (const auto& r : results) {
    json j{{"name", r.name},
           {"status", checks::to_string(r.status)},
           {"value", r.value},
           {"tolerance", r.tolerance}};
    for (const auto& [k, v] : r.extra) j[k] = v;
    if (!r.note.empty()) j["note"] = r.note;
    list.push_back(j);
  }
  json doc{{"task", "verify"},
           {"parameters", parameters_json(c)},
           {"perturb_hermiticity", c.perturb_hermiticity},
           {"passed", ok},
           {"checks", list}};
  os << doc.dump(2) << '\n';
  return ok;
}

// ---------------------------------------------------------------------------

inline void emit_error(std::ostream& err, int code, const std::string& kind,
                       const std::string& message) {
  json e{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
  err << e.dump() << '\n';
}

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::numerical:
    case ErrorKind::not_hermitian:
    case ErrorKind::not_normalized:
    case ErrorKind::no_crossing:
      return kNumerical;
    default:
      return kConfig;
  }
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_model, "cannot read config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_model, "config '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig c;
  try {
    from_json(j, c);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_model, "config '" + path + "': " + e.what());
  }
  return c;
}

inline void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty() || c.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::invalid_model, "cannot write '" + c.output + "'");
  f << text;
  if (!f) throw Error(ErrorKind::numerical, "write to '" + c.output + "' failed");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string config_path, dump_path;
  CLI::App app{"gauge_ladder: gauge-invariant sectors, spectra and Rabi traces", "gauge_ladder"};
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
      else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    }
    if (!config_path.empty()) cfg = load_config_file(config_path);

    app.add_option("--config", config_path, "JSON config; explicit flags override it");
    app.add_option("--dump-config", dump_path, "write the effective config as JSON and exit");
    app.add_option("--task", cfg.task, "spectrum | blocks | dims | evolve | verify");
    app.add_option("--model", cfg.model, "jcm | u1-link | u1-chain | su2-link | su2-chain");
    app.add_option("--omega-c", cfg.omega_c, "cavity frequency");
    app.add_option("--omega-a", cfg.omega_a, "atomic frequency");
    app.add_option("--rabi", cfg.rabi, "vacuum Rabi coupling Omega_0");
    app.add_option("--g", cfg.g, "gauge coupling g");
    app.add_option("--mass", cfg.mass, "staggered mass M");
    app.add_option("--eps", cfg.eps, "hopping epsilon");
    app.add_option("--sites", cfg.sites, "number of sites (even)");
    app.add_option("--chain-m", cfg.chain_m, "chain parameter M for dims (N = 2M + 2)");
    app.add_option("--sector", cfg.sectors, "q=1, q=1,-1,0,0, jq=0, jq=3/2 (repeatable)");
    app.add_option("--n-max", cfg.n_max, "photon cutoff");
    app.add_option("--jmax", cfg.jmax, "SU(2) link cutoff, one value or one per link");
    app.add_option("--window", cfg.windows, "U(1) electric window lo:hi per link (repeatable)");
    app.add_option("--source", cfg.source, "auto | analytic | projected");
    app.add_flag("--eigenvectors", cfg.eigenvectors, "include eigenvector components");
    app.add_option("--output", cfg.output, "output file (default stdout)");
    app.add_option("--format", cfg.format, "csv | json");
    app.add_option("--preset", cfg.preset, "fig3b | fig3c");
    app.add_option("--initial", cfg.initial, "initial basis state label");
    app.add_option("--t-max", cfg.t_max, "final time (default two transfer periods)");
    app.add_option("--n-steps", cfg.n_steps, "number of time intervals");
    app.add_option("--method", cfg.method, "auto | eigen | krylov");
    app.add_option("--perturb-hermiticity", cfg.perturb_hermiticity,
                   "add a non-Hermitian entry to H before verification");
    app.add_option("--check", cfg.checks, "verification check name (repeatable)");
    app.parse(argc, argv);

    validate(cfg);
    if (!dump_path.empty()) {
      std::ofstream f(dump_path, std::ios::binary | std::ios::trunc);
      if (!f) throw Error(ErrorKind::invalid_model, "cannot write '" + dump_path + "'");
      f << json(cfg).dump(2) << '\n';
      return kOk;
    }

    std::ostringstream buf;
    bool ok = true;
    if (cfg.task == "spectrum") cmd_spectrum(cfg, buf);
    else if (cfg.task == "blocks") cmd_blocks(cfg, buf);
    else if (cfg.task == "dims") cmd_dims(cfg, buf);
    else if (cfg.task == "evolve") cmd_evolve(cfg, buf);
    else ok = cmd_verify(cfg, buf);
    write_output(cfg, buf.str(), out);
    if (!ok) {
      emit_error(err, kNumerical, "check_failed", "one or more verification checks failed");
      return kNumerical;
    }
    return kOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, kConfig, "config", e.what());
    return kConfig;
  } catch (const EmptyResult& e) {
    emit_error(err, kEmpty, "empty_result", e.what());
    return kEmpty;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    emit_error(err, code, to_string(e.kind()), e.what());
    return code;
  } catch (const std::exception& e) {
    emit_error(err, kNumerical, "internal", e.what());
    return kNumerical;
  }
}

}  // namespace gauge_ladder::cli
