#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qbps/dtbps.hpp"
#include "qbps/io.hpp"

using json = nlohmann::ordered_json;
using namespace qbps;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json int_json(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string ms_str(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

struct Opts {
  std::string path;
  int G = 2;
  int N = 24;
  int r_max = 1;
  int m = 0;
  std::string fields = "auto";
  long length = -1;
  std::string format = "text";
  int jobs = 0;
  long budget = 1L << 34;
  bool window = false;
  bool self_test = false;
};

std::vector<long> resolve_fields(const Opts& o, const Quiver& Q, const Potential& W) {
  if (o.fields == "auto") return auto_fields(effective_modulus(Q, W), 2);
  std::vector<long> out;
  std::stringstream ss(o.fields);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw input_error("empty entry in the field list");
    for (char ch : item)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw input_error("malformed field size '" + item + "'");
    long q = std::stol(item);
    if (q < 2) throw input_error("field sizes must be at least 2");
    out.push_back(q);
  }
  if (out.empty()) throw input_error("the field list is empty");
  return out;
}

// the raw counting command accepts any field; when the potential carries
// quasi-homogeneous weights the congruence rule applies so that downstream
// interpolation stays meaningful
void require_congruence(const Quiver& Q, const Potential& W, const std::vector<long>& fields) {
  if (W.zero()) return;
  auto qh = qh_weights(Q, W);
  if (!qh) return;
  long M = qh->degree == 2 ? 4 : qh->degree;
  for (long q : fields)
    if ((q - 1) % M != 0)
      throw budget_error("field size " + std::to_string(q) +
                         " violates the congruence requirement q = 1 mod " + std::to_string(M));
}

PipelineOptions pipeline_opts(const Opts& o) {
  PipelineOptions p;
  p.jobs = o.jobs;
  p.budget = Int(o.budget);
  p.window_only = o.window;
  return p;
}

int cmd_jacobi(const Opts& o) {
  auto [Q, W] = parse_input(read_file(o.path));
  TruncatedQuotient T = truncated_dim_profile(Q, W, o.N);
  FinitenessCertificate c = finiteness_certificate(T);
  if (o.format == "json") {
    json j;
    j["command"] = "jacobi";
    j["truncation"] = o.N;
    j["certified"] = c.certified;
    j["n_star"] = c.n_star;
    j["dim_total"] = c.dim_total;
    j["survivor_counts"] = T.survivor_counts;
    j["dim_by_vertex_pair"] = c.dim_by_vertex_pair;
    std::cout << j.dump() << "\n";
  } else if (o.format == "csv") {
    std::cout << "length,survivors\n";
    for (size_t l = 0; l < T.survivor_counts.size(); ++l)
      std::cout << l << "," << T.survivor_counts[l] << "\n";
  } else {
    std::cout << "certified = " << (c.certified ? "yes" : "no") << "\n";
    if (c.certified) {
      std::cout << "n_star = " << c.n_star << "\n";
      std::cout << "dim_total = " << c.dim_total << "\n";
    }
    std::cout << "survivors =";
    for (long s : T.survivor_counts) std::cout << " " << s;
    std::cout << "\n";
  }
  return 0;
}

int cmd_milnor(const Opts& o) {
  auto [Q, W] = parse_input(read_file(o.path));
  CommPoly f = abelianize(Q, W, DimVector(Q.vertex_count, 1));
  MilnorResult r = local_milnor(f, o.N);
  if (o.format == "json") {
    json j;
    j["command"] = "milnor";
    j["truncation"] = o.N;
    j["certified"] = r.certified;
    j["n_star"] = r.n_star;
    j["dim"] = r.dim;
    j["survivor_counts"] = r.survivor_counts;
    std::cout << j.dump() << "\n";
  } else if (o.format == "csv") {
    std::cout << "degree,survivors\n";
    for (size_t l = 0; l < r.survivor_counts.size(); ++l)
      std::cout << l << "," << r.survivor_counts[l] << "\n";
  } else {
    std::cout << "certified = " << (r.certified ? "yes" : "no") << "\n";
    if (r.certified) {
      std::cout << "n_star = " << r.n_star << "\n";
      std::cout << "dim = " << r.dim << "\n";
    }
    std::cout << "survivors =";
    for (long s : r.survivor_counts) std::cout << " " << s;
    std::cout << "\n";
  }
  return 0;
}

int cmd_spectrum(const Opts& o) {
  auto [Q, W] = parse_input(read_file(o.path));
  auto qh = qh_weights(Q, W);
  if (!qh) throw input_error("the spectrum needs a quasi-homogeneous potential");
  CommPoly f = abelianize(Q, W, DimVector(Q.vertex_count, 1));
  if (f.vars.empty() || f.vars.size() > 2)
    throw input_error("the spectrum supports one or two variables");
  std::vector<long> w;
  for (const auto& vn : f.vars) w.push_back(qh->weights[Q.arrow_index(vn)]);
  SpectrumTable S = steenbrink_spectrum(w, qh->degree);
  if (o.format == "json") {
    json j;
    j["command"] = "spectrum";
    j["n_vars"] = S.n_vars;
    j["mu"] = S.mu;
    json nums = json::array();
    for (const auto& a : S.spectral_numbers) nums.push_back(rat_str(a));
    j["spectral_numbers"] = nums;
    std::cout << j.dump() << "\n";
  } else if (o.format == "csv") {
    std::cout << "alpha\n";
    for (const auto& a : S.spectral_numbers) std::cout << rat_str(a) << "\n";
  } else {
    std::string line;
    for (const auto& a : S.spectral_numbers) {
      if (!line.empty()) line += ", ";
      line += rat_str(a);
    }
    std::cout << line << "\n";
  }
  return 0;
}

int cmd_count(const Opts& o) {
  auto [Q, W] = parse_input(read_file(o.path));
  std::vector<long> fields = resolve_fields(o, Q, W);
  require_congruence(Q, W, fields);
  CountOptions co;
  co.jobs = o.jobs;
  co.budget = Int(o.budget);
  std::vector<FiniteField> ffs;
  for (long q : fields) ffs.push_back(field_make_q(q));
  std::vector<CountReport> rows;
  for (const auto& g : sectors_up_to(Q.vertex_count, o.G)) {
    for (const auto& F : ffs) {
      rows.push_back(o.m > 0 ? framed_exp_sum_count(Q, W, g, o.m, F, co)
                             : exp_sum_count(Q, W, g, F, co));
    }
  }
  if (o.format == "json") {
    json j;
    j["command"] = "count";
    j["framed"] = o.m > 0;
    j["m"] = o.m;
    json rs = json::array();
    for (const auto& r : rows) {
      json e;
      e["gamma"] = r.gamma;
      e["q"] = r.q;
      e["n0"] = int_json(r.n0);
      e["n1"] = int_json(r.n1);
      e["e"] = int_json(r.e);
      e["total"] = int_json(r.total);
      rs.push_back(e);
    }
    j["rows"] = rs;
    std::cout << j.dump() << "\n";
  } else if (o.format == "csv") {
    std::cout << "gamma,q,N0,N1,E,elapsed_ms\n";
    for (const auto& r : rows) {
      std::cout << csv_quote(dim_str(r.gamma)) << "," << r.q << "," << r.n0.get_str() << ","
                << r.n1.get_str() << "," << r.e.get_str() << "," << ms_str(r.elapsed_ms) << "\n";
    }
  } else {
    for (const auto& r : rows) {
      std::cout << "gamma=" << dim_str(r.gamma) << " q=" << r.q << " N0=" << r.n0.get_str()
                << " N1=" << r.n1.get_str() << " E=" << r.e.get_str();
      if (r.framed) std::cout << " E/|GL|=" << rat_str(r.e_over_gl);
      std::cout << " (" << ms_str(r.elapsed_ms) << " ms)\n";
    }
  }
  return 0;
}

int cmd_bps(const Opts& o) {
  auto [Q, W] = parse_input(read_file(o.path));
  std::vector<long> fields = resolve_fields(o, Q, W);
  BpsTable t = bps_extract(Q, W, o.G, fields, pipeline_opts(o));
  if (o.format == "json") {
    json j;
    j["command"] = "bps";
    j["G"] = t.G;
    j["modulus"] = t.modulus;
    j["fields"] = t.fields;
    json es = json::array();
    for (const auto& e : t.entries) {
      json je;
      je["gamma"] = e.gamma;
      je["omega"] = e.omega.str();
      je["omega_num"] = int_json(e.omega_num);
      je["positive"] = e.positive;
      je["palindromic"] = e.palindromic;
      je["simple_sector"] = e.simple_sector;
      je["vanishing_by_criterion"] = e.vanishing_by_criterion;
      es.push_back(je);
    }
    j["entries"] = es;
    std::cout << j.dump() << "\n";
  } else if (o.format == "csv") {
    std::cout << "gamma,omega,omega_num,positive,palindromic,simple_sector,vanishing_by_criterion\n";
    for (const auto& e : t.entries) {
      std::cout << csv_quote(dim_str(e.gamma)) << "," << csv_quote(e.omega.str()) << ","
                << e.omega_num.get_str() << "," << (e.positive ? 1 : 0) << ","
                << (e.palindromic ? 1 : 0) << "," << (e.simple_sector ? 1 : 0) << ","
                << (e.vanishing_by_criterion ? 1 : 0) << "\n";
    }
  } else {
    for (const auto& e : t.entries) {
      std::cout << "gamma=" << dim_str(e.gamma) << " omega=" << e.omega.str()
                << " omega_num=" << e.omega_num.get_str();
      if (!e.simple_sector)
        std::cout << (e.vanishing_by_criterion ? " [zero by the support window]"
                                               : " [measured zero]");
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_gv(const Opts& o) {
  auto [Q, W] = parse_input(read_file(o.path));
  std::vector<long> fields = resolve_fields(o, Q, W);
  std::optional<long> len;
  if (o.length >= 0) len = o.length;
  std::vector<GvRow> rows = gv_table(Q, W, o.r_max, len, fields, pipeline_opts(o));
  if (o.format == "json") {
    json j;
    j["command"] = "gv";
    json rs = json::array();
    for (const auto& r : rows) {
      json e;
      e["r"] = r.r;
      e["gv_num"] = int_json(r.gv_num);
      e["gv_refined"] = r.gv_refined.str();
      e["gv_bivariate"] = r.gv_bivariate ? json(bivariate_str(*r.gv_bivariate)) : json();
      e["gv_wtm"] = r.gv_wtm ? json(wtm_str(*r.gv_wtm)) : json();
      e["gv_chi"] = r.gv_chi ? json(*r.gv_chi) : json();
      rs.push_back(e);
    }
    j["rows"] = rs;
    std::cout << j.dump() << "\n";
  } else if (o.format == "csv") {
    std::cout << "r,gv_num,gv_refined,gv_bivariate,gv_wtm,gv_chi\n";
    for (const auto& r : rows) {
      std::cout << r.r << "," << r.gv_num.get_str() << "," << csv_quote(r.gv_refined.str()) << ",";
      std::cout << (r.gv_bivariate ? csv_quote(bivariate_str(*r.gv_bivariate)) : "") << ",";
      std::cout << (r.gv_wtm ? csv_quote(wtm_str(*r.gv_wtm)) : "") << ",";
      if (r.gv_chi) std::cout << *r.gv_chi;
      std::cout << "\n";
    }
  } else {
    for (const auto& r : rows) {
      std::cout << "r=" << r.r << " gv=" << r.gv_num.get_str()
                << " refined=" << r.gv_refined.str();
      if (r.gv_bivariate) std::cout << "\n  bivariate = " << bivariate_str(*r.gv_bivariate);
      if (r.gv_wtm) std::cout << "\n  weight monodromy = " << wtm_str(*r.gv_wtm);
      if (r.gv_chi) std::cout << "\n  chi = " << *r.gv_chi;
      std::cout << "\n";
    }
  }
  return 0;
}

void emit_report(const Report& r, const std::string& format, const std::string& command) {
  if (format == "json") {
    json j;
    j["command"] = command;
    json es = json::array();
    for (const auto& e : r.entries) {
      json je;
      je["check"] = e.check;
      je["pass"] = e.pass;
      je["lhs"] = e.lhs;
      je["rhs"] = e.rhs;
      es.push_back(je);
    }
    j["entries"] = es;
    j["passed"] = r.passed();
    std::cout << j.dump() << "\n";
  } else if (format == "csv") {
    std::cout << "check,pass,lhs,rhs\n";
    for (const auto& e : r.entries)
      std::cout << csv_quote(e.check) << "," << (e.pass ? 1 : 0) << "," << csv_quote(e.lhs) << ","
                << csv_quote(e.rhs) << "\n";
  } else {
    for (const auto& e : r.entries)
      std::cout << (e.pass ? "PASS " : "FAIL ") << e.check << ": " << e.lhs << " vs " << e.rhs
                << "\n";
    std::cout << (r.passed() ? "all checks passed" : "some checks FAILED") << "\n";
  }
}

int cmd_framed(const Opts& o) {
  auto [Q, W] = parse_input(read_file(o.path));
  std::vector<long> fields = resolve_fields(o, Q, W);
  int m = o.m > 0 ? o.m : 1;
  PipelineOptions p = pipeline_opts(o);
  PipelineOptions pw = p;
  pw.window_only = true;
  BpsTable t = bps_extract(Q, W, o.G, fields, pw);
  Report r = framed_exp_check(Q, W, m, o.G, fields, t, p);
  emit_report(r, o.format, "framed-check");
  return r.passed() ? 0 : 1;
}

int cmd_verify(const Opts& o) {
  auto [Q, W] = parse_input(read_file(o.path));
  std::vector<long> fields = resolve_fields(o, Q, W);
  PipelineOptions p = pipeline_opts(o);
  p.window_only = true;
  BpsTable t = bps_extract(Q, W, o.G, fields, p);
  if (o.self_test && !t.entries.empty()) {
    BpsEntry& e = t.entries.front();
    e.omega = e.omega + Laurent::constant(Rat(1));
    e.omega_num += 1;
  }
  FinitenessCertificate cert = finiteness_certificate(truncated_dim_profile(Q, W, o.N));
  Report r = verify_theoremB(Q, W, t, cert);
  emit_report(r, o.format, "verify");
  return r.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact refined invariants of symmetric quivers with potential"};
  app.require_subcommand(1);
  Opts o;
  auto add_common = [&](CLI::App* s, bool with_fields) {
    s->add_option("input", o.path, "quiver and potential input file")->required();
    s->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    s->add_option("--jobs", o.jobs, "worker threads, 0 for hardware concurrency");
    s->add_option("--budget", o.budget, "point enumeration budget");
    if (with_fields) s->add_option("--fields", o.fields, "comma-separated field sizes or 'auto'");
  };

  CLI::App* jac = app.add_subcommand("jacobi", "truncated quotient profile and certificate");
  add_common(jac, false);
  jac->add_option("--truncation", o.N, "path length truncation");

  CLI::App* mil = app.add_subcommand("milnor", "local dimension of the abelianized quotient");
  add_common(mil, false);
  mil->add_option("--truncation", o.N, "degree truncation");

  CLI::App* spec = app.add_subcommand("spectrum", "spectral numbers of the abelianized potential");
  add_common(spec, false);

  CLI::App* bps = app.add_subcommand("bps", "refined invariants by counting and interpolation");
  add_common(bps, true);
  bps->add_option("--max-total-degree", o.G, "largest total dimension");
  bps->add_flag("--window", o.window, "record sectors without simple representations as zero");

  CLI::App* gv = app.add_subcommand("gv", "genus-zero curve counts of the contraction algebra");
  add_common(gv, true);
  gv->add_option("--rank-max", o.r_max, "largest curve class multiple");
  gv->add_option("--length", o.length, "length bound for vanishing");
  gv->add_flag("--window", o.window, "record sectors without simple representations as zero");

  CLI::App* fr = app.add_subcommand("framed-check", "framed generating series against the product form");
  add_common(fr, true);
  fr->add_option("--framing", o.m, "framing rank");
  fr->add_option("--max-total-degree", o.G, "series truncation");

  CLI::App* ver = app.add_subcommand("verify", "positivity, support, and dimension identities");
  add_common(ver, true);
  ver->add_option("--max-total-degree", o.G, "largest total dimension");
  ver->add_option("--truncation", o.N, "path length truncation for the certificate");
  ver->add_flag("--self-test", o.self_test, "inject a deliberate error to confirm detection");

  CLI::App* cnt = app.add_subcommand("count", "raw point counts over the sampled fields");
  add_common(cnt, true);
  cnt->add_option("--max-total-degree", o.G, "largest total dimension");
  cnt->add_option("--framing", o.m, "framing rank, 0 for unframed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "jacobi") return cmd_jacobi(o);
    if (cmd == "milnor") return cmd_milnor(o);
    if (cmd == "spectrum") return cmd_spectrum(o);
    if (cmd == "bps") return cmd_bps(o);
    if (cmd == "gv") return cmd_gv(o);
    if (cmd == "framed-check") return cmd_framed(o);
    if (cmd == "verify") return cmd_verify(o);
    if (cmd == "count") return cmd_count(o);
    throw internal_error("unhandled command " + cmd);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const theorem_error& e) {
    std::cerr << "identity violation: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
