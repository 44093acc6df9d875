// Command-line surface over the model library. Exit codes:
//   0 success / membership pass
//   2 membership failure
//   3 validator refusal on non-generic parameters
//   1 anything else (parse errors, bad usage, constraint violations)

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "smm/io.hpp"

namespace {

using namespace smm;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(std::stod(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_doubles(csv)) out.push_back(static_cast<int>(v));
  return out;
}

std::string sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_sample(const std::string& kind, int n, std::optional<int> k,
               const std::string& signature, const std::string& params_csv,
               const std::string& spd_file, std::uint64_t seed,
               const std::string& out_path) {
  Rotation q = haar_rotation(n, seed);
  ModelFile file;
  if (kind == "grassmann") {
    if (!k) throw Error("grassmann sampling needs --k");
    std::vector<double> p = parse_doubles(params_csv);
    if (p.size() != 2) throw Error("grassmann needs two params");
    file = from_grassmann(gr_construct(q, *k, QuadraticParams(p[0], p[1])));
  } else if (kind == "flag") {
    FlagSignature sig(n, parse_ints(signature));
    IsospectralParams p(parse_doubles(params_csv));
    file = from_flag(flag_construct(q, sig, p));
  } else if (kind == "stiefel") {
    if (!k) throw Error("stiefel sampling needs --k");
    SpdMatrix a = spd_file.empty() ? SpdMatrix::identity(*k)
                                   : to_spd(read_model(spd_file));
    file = from_stiefel(st_construct(q.mat(), a));
  } else {
    throw Error("unknown sample kind '" + kind + "'");
  }
  file.seed = seed;
  file.prng = kHaarPrngName;
  write_model(file, out_path);
  std::cout << "written=" << out_path << "\n";
  return 0;
}

void print_report(const char* name, double residual) {
  std::cout << name << "=" << sig17(residual) << "\n";
}

int cmd_validate(const std::string& path, double tol, bool generic) {
  ModelFile file = read_model(path);
  switch (file.kind) {
    case ModelKind::Grassmann: {
      GrassmannPoint pt = to_grassmann(file);
      GrMembershipReport rep = gr_membership(pt.x, pt.k, pt.params, tol);
      print_report("symmetry_residual", rep.symmetry_residual);
      print_report("polynomial_residual", rep.polynomial_residual);
      print_report("trace_residual", rep.trace_residual);
      print_report("scale", rep.scale);
      std::cout << "pass=" << (rep.pass ? "true" : "false") << "\n";
      return rep.pass ? 0 : 2;
    }
    case ModelKind::Flag: {
      IsospectralPoint pt = to_flag(file);
      FlagMembershipReport rep;
      if (generic) {
        try {
          rep = flag_membership_generic(pt.x, pt.sig, pt.params, tol);
        } catch (const NotGeneric& e) {
          std::cout << "refusal=" << e.what() << "\n";
          return 3;
        }
      } else {
        rep = flag_membership_full(pt.x, pt.sig, pt.params, tol);
      }
      print_report("symmetry_residual", rep.symmetry_residual);
      print_report("polynomial_residual", rep.polynomial_residual);
      for (size_t i = 0; i < rep.trace_residuals.size(); ++i)
        print_report(("trace_residual_" + std::to_string(i + 1)).c_str(),
                     rep.trace_residuals[i]);
      print_report("scale", rep.scale);
      std::cout << "pass=" << (rep.pass ? "true" : "false") << "\n";
      return rep.pass ? 0 : 2;
    }
    case ModelKind::Stiefel: {
      CholeskyStiefelPoint pt = to_stiefel(file);
      StMembershipReport rep = st_membership(pt.y, pt.a, tol);
      print_report("gram_residual", rep.residual);
      print_report("scale", rep.scale);
      std::cout << "pass=" << (rep.pass ? "true" : "false") << "\n";
      return rep.pass ? 0 : 2;
    }
    case ModelKind::Spd: {
      SpdMatrix a = to_spd(file);  // SPD enforced at load
      print_report("cond", a.cond());
      std::cout << "pass=true\n";
      return 0;
    }
    case ModelKind::Product: {
      try {
        product_to_flag(to_product(file), tol);
      } catch (const NotAProduct& e) {
        std::cout << "reason=" << e.what() << "\npass=false\n";
        return 2;
      }
      std::cout << "pass=true\n";
      return 0;
    }
    default:
      throw Error("validate does not support this kind");
  }
}

int cmd_convert(const std::string& path, const std::string& to_params,
                const std::string& to_spd_path, double t,
                const std::string& out_path) {
  ModelFile file = read_model(path);
  if (!to_spd_path.empty()) {
    CholeskyStiefelPoint pt = to_stiefel(file);
    SpdMatrix b = to_spd(read_model(to_spd_path));
    write_model(from_stiefel(st_convert_homotopy(pt, b, t)), out_path);
  } else if (file.kind == ModelKind::Grassmann) {
    GrassmannPoint pt = to_grassmann(file);
    std::vector<double> p = parse_doubles(to_params);
    if (p.size() != 2) throw Error("grassmann conversion needs two params");
    if (t == 1.0) {
      write_model(from_grassmann(
                      gr_convert_affine(pt, QuadraticParams(p[0], p[1]))),
                  out_path);
    } else {
      IsospectralPoint iso{pt.x, FlagSignature(pt.n, {pt.k}),
                           IsospectralParams({pt.params.a, pt.params.b})};
      IsospectralPoint moved =
          flag_homotopy_convert(iso, IsospectralParams(p), t);
      QuadraticParams at_t(moved.params[0], moved.params[1]);
      write_model(from_grassmann({moved.x, at_t, pt.k, pt.n}), out_path);
    }
  } else if (file.kind == ModelKind::Flag) {
    IsospectralPoint pt = to_flag(file);
    IsospectralPoint moved =
        flag_homotopy_convert(pt, IsospectralParams(parse_doubles(to_params)), t);
    write_model(from_flag(moved), out_path);
  } else {
    throw Error("convert supports grassmann, flag, and stiefel files");
  }
  std::cout << "written=" << out_path << "\n";
  return 0;
}

int cmd_extract(const std::string& path, const std::string& out_path) {
  ModelFile file = read_model(path);
  ModelFile out;
  out.kind = ModelKind::Frames;
  if (file.kind == ModelKind::Grassmann) {
    GrassmannPoint pt = to_grassmann(file);
    out.n = pt.n;
    out.k = {pt.k};
    out.matrices = {gr_extract(pt)};
  } else if (file.kind == ModelKind::Flag) {
    IsospectralPoint pt = to_flag(file);
    FlagExtraction ext = flag_extract(pt);
    out.n = pt.sig.n();
    out.k = pt.sig.k();
    out.matrices = ext.flag.blocks;
  } else if (file.kind == ModelKind::Stiefel) {
    CholeskyStiefelPoint pt = to_stiefel(file);
    QrResult qr = qr_positive(pt.y);
    out.n = static_cast<int>(pt.y.rows());
    out.k = {pt.a.dim()};
    out.matrices = {qr.q, qr.r};
  } else {
    throw Error("extract supports grassmann, flag, and stiefel files");
  }
  write_model(out, out_path);
  std::cout << "written=" << out_path << "\n";
  return 0;
}

int cmd_metric(const std::string& kind, const std::string& signature, int n,
               const std::string& params_csv, const std::string& spd_file,
               const std::vector<std::string>& files) {
  double value = 0;
  if (kind == "flag") {
    if (files.size() != 2) throw Error("flag metric needs two tangent files");
    FlagMTangent b = to_flag_tangent(read_model(files[0]));
    FlagMTangent c = to_flag_tangent(read_model(files[1]));
    (void)signature;
    (void)n;
    value = flag_m_metric(b, c, IsospectralParams(parse_doubles(params_csv)));
  } else if (kind == "stiefel") {
    if (files.size() != 2) throw Error("stiefel metric needs two tangent files");
    StiefelMTangent b = to_stiefel_tangent(read_model(files[0]));
    StiefelMTangent c = to_stiefel_tangent(read_model(files[1]));
    SpdMatrix a = spd_file.empty() ? SpdMatrix::identity(
                                         static_cast<int>(b.b1.rows()))
                                   : to_spd(read_model(spd_file));
    value = stiefel_m_metric(b, c, cholesky_upper(a));
  } else if (kind == "cartan") {
    if (files.size() != 3)
      throw Error("cartan metric needs A.smm X.smm Y.smm");
    SpdMatrix a = to_spd(read_model(files[0]));
    ModelFile xf = read_model(files[1]);
    ModelFile yf = read_model(files[2]);
    value = cartan_metric(a, xf.matrices[0], yf.matrices[0]);
  } else {
    throw Error("unknown metric kind '" + kind + "'");
  }
  std::cout << "metric=" << sig17(value) << "\n";
  return 0;
}

int cmd_params(int n, const std::string& signature, bool traceless,
               std::optional<double> optimize_eps) {
  FlagSignature sig(n, parse_ints(signature));
  IsospectralParams out = optimize_eps
                              ? params_optimize_cond(sig, *optimize_eps, traceless)
                              : params_traceless(sig);
  std::cout << "params=";
  for (int j = 0; j < out.size(); ++j) {
    if (j) std::cout << ',';
    std::cout << sig17(out[j]);
  }
  std::cout << "\ncond=" << sig17(cond_number(out)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivariant matrix models of flag, Grassmann, and Stiefel manifolds"};
  app.require_subcommand(1);

  double default_tol = smm::tol::default_membership();

  // sample
  auto* sample = app.add_subcommand("sample", "draw a Haar-random model point");
  std::string s_kind, s_signature, s_params, s_spd, s_out;
  int s_n = 0;
  std::optional<int> s_k;
  std::uint64_t s_seed = 0;
  sample->add_option("--kind", s_kind)->required();
  sample->add_option("--n", s_n)->required();
  sample->add_option("--k", s_k);
  sample->add_option("--signature", s_signature);
  sample->add_option("--params", s_params);
  sample->add_option("--spd-file", s_spd);
  sample->add_option("--seed", s_seed)->required();
  sample->add_option("-o,--output", s_out)->required();

  // validate
  auto* validate = app.add_subcommand("validate", "membership check");
  std::string v_file;
  double v_tol = default_tol;
  bool v_generic = false;
  validate->add_option("file", v_file)->required();
  validate->add_option("--tol", v_tol);
  validate->add_flag("--generic", v_generic);

  // convert
  auto* convert = app.add_subcommand("convert", "change of coordinates");
  std::string c_file, c_to_params, c_to_spd, c_out;
  double c_t = 1.0;
  convert->add_option("file", c_file)->required();
  convert->add_option("--to-params", c_to_params);
  convert->add_option("--to-spd", c_to_spd);
  convert->add_option("--t", c_t);
  convert->add_option("-o,--output", c_out)->required();

  // extract
  auto* extract = app.add_subcommand("extract", "recover frames / factors");
  std::string e_file, e_out;
  extract->add_option("file", e_file)->required();
  extract->add_option("-o,--output", e_out)->required();

  // metric
  auto* metric = app.add_subcommand("metric", "evaluate a weighted metric");
  std::string m_kind, m_signature, m_params, m_spd;
  int m_n = 0;
  std::vector<std::string> m_files;
  metric->add_option("--kind", m_kind)->required();
  metric->add_option("--n", m_n);
  metric->add_option("--signature", m_signature);
  metric->add_option("--params", m_params);
  metric->add_option("--spd-file", m_spd);
  metric->add_option("files", m_files);

  // cond
  auto* cond = app.add_subcommand("cond", "condition number of parameters");
  std::string cd_params;
  cond->add_option("--params", cd_params)->required();

  // params
  auto* params = app.add_subcommand("params", "parameter selection");
  std::string p_signature;
  int p_n = 0;
  bool p_traceless = false;
  std::optional<double> p_eps;
  params->add_option("--n", p_n)->required();
  params->add_option("--signature", p_signature)->required();
  params->add_flag("--traceless", p_traceless);
  params->add_option("--optimize-cond", p_eps);

  // geodesic
  auto* geodesic = app.add_subcommand("geodesic", "Cartan geodesic point");
  std::string g_a, g_b, g_out;
  double g_t = 0.5;
  geodesic->add_option("a", g_a)->required();
  geodesic->add_option("b", g_b)->required();
  geodesic->add_option("--t", g_t)->required();
  geodesic->add_option("-o,--output", g_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed())
      return cmd_sample(s_kind, s_n, s_k, s_signature, s_params, s_spd, s_seed,
                        s_out);
    if (validate->parsed()) return cmd_validate(v_file, v_tol, v_generic);
    if (convert->parsed())
      return cmd_convert(c_file, c_to_params, c_to_spd, c_t, c_out);
    if (extract->parsed()) return cmd_extract(e_file, e_out);
    if (metric->parsed())
      return cmd_metric(m_kind, m_signature, m_n, m_params, m_spd, m_files);
    if (cond->parsed()) {
      std::cout << "cond="
                << sig17(smm::cond_number(
                       smm::IsospectralParams(parse_doubles(cd_params))))
                << "\n";
      return 0;
    }
    if (params->parsed()) return cmd_params(p_n, p_signature, p_traceless, p_eps);
    if (geodesic->parsed()) {
      smm::SpdMatrix a = smm::to_spd(smm::read_model(g_a));
      smm::SpdMatrix b = smm::to_spd(smm::read_model(g_b));
      smm::write_model(smm::from_spd(smm::cartan_geodesic(a, b, g_t)), g_out);
      std::cout << "written=" << g_out << "\n";
      return 0;
    }
  } catch (const smm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
