#include "smm/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace smm {

std::string kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Grassmann: return "grassmann";
    case ModelKind::Flag: return "flag";
    case ModelKind::Stiefel: return "stiefel";
    case ModelKind::Spd: return "spd";
    case ModelKind::Product: return "product";
    case ModelKind::Sym: return "sym";
    case ModelKind::MTangentFlag: return "mtangent-flag";
    case ModelKind::MTangentStiefel: return "mtangent-stiefel";
    case ModelKind::Frames: return "frames";
  }
  throw Error("unknown kind");
}

ModelKind kind_from_name(const std::string& name) {
  if (name == "grassmann") return ModelKind::Grassmann;
  if (name == "flag") return ModelKind::Flag;
  if (name == "stiefel") return ModelKind::Stiefel;
  if (name == "spd") return ModelKind::Spd;
  if (name == "product") return ModelKind::Product;
  if (name == "sym") return ModelKind::Sym;
  if (name == "mtangent-flag") return ModelKind::MTangentFlag;
  if (name == "mtangent-stiefel") return ModelKind::MTangentStiefel;
  if (name == "frames") return ModelKind::Frames;
  throw Error("unknown kind '" + name + "'");
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

// Tokenizer over one line; remembers 1-based columns for error reports.
class LineTokens {
public:
  LineTokens(const std::string& line, int line_no)
      : line_(line), line_no_(line_no) {}

  bool next(std::string& out) {
    while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
    if (pos_ >= line_.size()) return false;
    last_col_ = static_cast<int>(pos_) + 1;
    size_t end = line_.find(' ', pos_);
    if (end == std::string::npos) end = line_.size();
    out = line_.substr(pos_, end - pos_);
    pos_ = end;
    return true;
  }

  std::string expect(const char* what) {
    std::string tok;
    if (!next(tok))
      throw ParseError(line_no_, static_cast<int>(pos_) + 1,
                       std::string("expected ") + what);
    return tok;
  }

  double expect_double(const char* what) {
    std::string tok = expect(what);
    double v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
      throw ParseError(line_no_, last_col_,
                       std::string("invalid number for ") + what);
    return v;
  }

  long long expect_int(const char* what) {
    std::string tok = expect(what);
    long long v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
      throw ParseError(line_no_, last_col_,
                       std::string("invalid integer for ") + what);
    return v;
  }

  void expect_end() {
    std::string tok;
    if (next(tok))
      throw ParseError(line_no_, last_col_, "unexpected token '" + tok + "'");
  }

  int last_col() const { return last_col_; }
  int line_no() const { return line_no_; }

private:
  const std::string& line_;
  int line_no_;
  size_t pos_ = 0;
  int last_col_ = 1;
};

class Reader {
public:
  explicit Reader(std::istream& in) : in_(in) {}

  // next non-comment line; false at EOF
  bool next_line(std::string& out) {
    while (std::getline(in_, out)) {
      ++line_no_;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (!out.empty() && out[0] == '#') continue;
      return true;
    }
    return false;
  }

  int line_no() const { return line_no_; }

private:
  std::istream& in_;
  int line_no_ = 0;
};

std::vector<int> parse_dims_list(const std::string& tok, int line_no, int col) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < tok.size()) {
    size_t comma = tok.find(',', pos);
    if (comma == std::string::npos) comma = tok.size();
    int v = 0;
    auto res = std::from_chars(tok.data() + pos, tok.data() + comma, v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + comma)
      throw ParseError(line_no, col, "invalid dimension list '" + tok + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  if (out.empty())
    throw ParseError(line_no, col, "empty dimension list");
  return out;
}

void validate_constraints(const ModelFile& file) {
  switch (file.kind) {
    case ModelKind::Grassmann: {
      if (file.k.size() != 1)
        throw ConstraintViolation("grassmann needs a single k");
      if (file.params.size() != 2)
        throw ConstraintViolation("grassmann needs exactly two params");
      try {
        QuadraticParams check(file.params[0], file.params[1]);
        (void)check;
      } catch (const DegenerateParams& e) {
        throw ConstraintViolation(e.what());
      }
      if (file.matrices.size() != 1)
        throw ConstraintViolation("grassmann stores one matrix");
      break;
    }
    case ModelKind::Flag:
    case ModelKind::MTangentFlag: {
      try {
        FlagSignature sig(file.n, file.k);
        if (file.kind == ModelKind::Flag) {
          IsospectralParams check(file.params);
          if (check.size() != sig.p() + 1)
            throw ConstraintViolation("need p+1 params");
        }
      } catch (const Error& e) {
        throw ConstraintViolation(e.what());
      }
      if (file.matrices.size() != 1)
        throw ConstraintViolation("kind stores one matrix");
      break;
    }
    case ModelKind::Stiefel: {
      if (file.k.size() != 1)
        throw ConstraintViolation("stiefel needs a single k");
      if (file.matrices.size() != 2)
        throw ConstraintViolation("stiefel stores Y then A");
      try {
        SpdMatrix check(file.matrices[1]);
        (void)check;
      } catch (const Error& e) {
        throw ConstraintViolation(e.what());
      }
      break;
    }
    case ModelKind::Spd: {
      if (file.matrices.size() != 1)
        throw ConstraintViolation("spd stores one matrix");
      try {
        SpdMatrix check(file.matrices[0]);
        (void)check;
      } catch (const Error& e) {
        throw ConstraintViolation(e.what());
      }
      break;
    }
    case ModelKind::Product: {
      if (file.matrices.empty())
        throw ConstraintViolation("product stores at least one matrix");
      break;
    }
    case ModelKind::Sym: {
      if (file.matrices.size() != 1)
        throw ConstraintViolation("sym stores one matrix");
      const Matrix& m = file.matrices[0];
      if (m.rows() != m.cols() ||
          (m - m.transpose()).norm() > tol::sym_tol * (1.0 + m.norm()))
        throw ConstraintViolation("sym matrix is not symmetric");
      break;
    }
    case ModelKind::MTangentStiefel: {
      if (file.matrices.size() != 2)
        throw ConstraintViolation("mtangent-stiefel stores B1 then B2");
      break;
    }
    case ModelKind::Frames:
      break;
  }
}

}  // namespace

ModelFile read_model(std::istream& in) {
  Reader reader(in);
  ModelFile file;
  std::string line;

  if (!reader.next_line(line)) throw ParseError(1, 1, "empty file");
  {
    LineTokens t(line, reader.line_no());
    if (t.expect("format name") != "smm")
      throw ParseError(reader.line_no(), t.last_col(), "expected 'smm'");
    if (t.expect_int("format version") != 1)
      throw ParseError(reader.line_no(), t.last_col(),
                       "unsupported format version");
    t.expect_end();
  }

  if (!reader.next_line(line))
    throw ParseError(reader.line_no() + 1, 1, "missing kind line");
  {
    LineTokens t(line, reader.line_no());
    if (t.expect("kind keyword") != "kind")
      throw ParseError(reader.line_no(), t.last_col(), "expected 'kind'");
    std::string name = t.expect("kind name");
    try {
      file.kind = kind_from_name(name);
    } catch (const Error&) {
      throw ParseError(reader.line_no(), t.last_col(),
                       "unknown kind '" + name + "'");
    }
    t.expect_end();
  }

  if (!reader.next_line(line))
    throw ParseError(reader.line_no() + 1, 1, "missing dims line");
  {
    LineTokens t(line, reader.line_no());
    if (t.expect("dims keyword") != "dims")
      throw ParseError(reader.line_no(), t.last_col(), "expected 'dims'");
    file.n = static_cast<int>(t.expect_int("n"));
    std::string rest;
    if (t.next(rest))
      file.k = parse_dims_list(rest, reader.line_no(), t.last_col());
    t.expect_end();
  }

  // optional lines (params / seed / prng) followed by matrix blocks
  bool have_line = reader.next_line(line);
  while (have_line) {
    LineTokens t(line, reader.line_no());
    std::string head = t.expect("keyword");
    if (head == "params") {
      file.params.clear();
      std::string num;
      LineTokens pt(line, reader.line_no());
      pt.expect("params keyword");
      while (pt.next(num)) {
        double v = 0;
        auto res = std::from_chars(num.data(), num.data() + num.size(), v);
        if (res.ec != std::errc{} || res.ptr != num.data() + num.size())
          throw ParseError(reader.line_no(), pt.last_col(),
                           "invalid parameter '" + num + "'");
        file.params.push_back(v);
      }
      if (file.params.empty())
        throw ParseError(reader.line_no(), t.last_col(), "empty params line");
    } else if (head == "seed") {
      file.seed = static_cast<std::uint64_t>(t.expect_int("seed"));
      t.expect_end();
    } else if (head == "prng") {
      file.prng = t.expect("prng identifier");
      t.expect_end();
    } else if (head == "matrix") {
      int rows = static_cast<int>(t.expect_int("row count"));
      int cols = static_cast<int>(t.expect_int("column count"));
      t.expect_end();
      if (rows <= 0 || cols <= 0)
        throw ParseError(reader.line_no(), 1, "matrix dimensions must be positive");
      Matrix m(rows, cols);
      for (int r = 0; r < rows; ++r) {
        if (!reader.next_line(line))
          throw ParseError(reader.line_no() + 1, 1, "truncated matrix block");
        LineTokens rt(line, reader.line_no());
        for (int c = 0; c < cols; ++c) m(r, c) = rt.expect_double("entry");
        rt.expect_end();
      }
      file.matrices.push_back(std::move(m));
    } else {
      throw ParseError(reader.line_no(), 1, "unknown keyword '" + head + "'");
    }
    have_line = reader.next_line(line);
  }

  if (file.matrices.empty())
    throw ParseError(reader.line_no() + 1, 1, "missing matrix block");
  validate_constraints(file);
  return file;
}

ModelFile read_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_model(in);
}

void write_model(const ModelFile& file, std::ostream& out) {
  out << "smm 1\n";
  out << "kind " << kind_name(file.kind) << "\n";
  out << "dims " << file.n;
  if (!file.k.empty()) {
    out << ' ';
    for (size_t i = 0; i < file.k.size(); ++i) {
      if (i) out << ',';
      out << file.k[i];
    }
  }
  out << "\n";
  if (!file.params.empty()) {
    out << "params";
    for (double v : file.params) out << ' ' << format_double(v);
    out << "\n";
  }
  if (file.seed) out << "seed " << *file.seed << "\n";
  if (!file.prng.empty()) out << "prng " << file.prng << "\n";
  for (const Matrix& m : file.matrices) {
    out << "matrix " << m.rows() << ' ' << m.cols() << "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c) out << ' ';
        out << format_double(m(r, c));
      }
      out << "\n";
    }
  }
}

void write_model(const ModelFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_model(file, out);
}

GrassmannPoint to_grassmann(const ModelFile& file) {
  if (file.kind != ModelKind::Grassmann) throw Error("not a grassmann file");
  return {file.matrices[0], QuadraticParams(file.params[0], file.params[1]),
          file.k[0], file.n};
}

IsospectralPoint to_flag(const ModelFile& file) {
  if (file.kind != ModelKind::Flag) throw Error("not a flag file");
  return {file.matrices[0], FlagSignature(file.n, file.k),
          IsospectralParams(file.params)};
}

CholeskyStiefelPoint to_stiefel(const ModelFile& file) {
  if (file.kind != ModelKind::Stiefel) throw Error("not a stiefel file");
  return {file.matrices[0], SpdMatrix(file.matrices[1])};
}

SpdMatrix to_spd(const ModelFile& file) {
  if (file.kind != ModelKind::Spd) throw Error("not an spd file");
  return SpdMatrix(file.matrices[0]);
}

GrassmannProductPoint to_product(const ModelFile& file) {
  if (file.kind != ModelKind::Product) throw Error("not a product file");
  return {file.matrices};
}

FlagMTangent to_flag_tangent(const ModelFile& file) {
  if (file.kind != ModelKind::MTangentFlag)
    throw Error("not an mtangent-flag file");
  return FlagMTangent::from_matrix(FlagSignature(file.n, file.k),
                                   file.matrices[0]);
}

StiefelMTangent to_stiefel_tangent(const ModelFile& file) {
  if (file.kind != ModelKind::MTangentStiefel)
    throw Error("not an mtangent-stiefel file");
  return StiefelMTangent(file.matrices[0], file.matrices[1]);
}

ModelFile from_grassmann(const GrassmannPoint& point) {
  ModelFile file;
  file.kind = ModelKind::Grassmann;
  file.n = point.n;
  file.k = {point.k};
  file.params = {point.params.a, point.params.b};
  file.matrices = {point.x};
  return file;
}

ModelFile from_flag(const IsospectralPoint& point) {
  ModelFile file;
  file.kind = ModelKind::Flag;
  file.n = point.sig.n();
  file.k = point.sig.k();
  file.params = point.params.values();
  file.matrices = {point.x};
  return file;
}

ModelFile from_stiefel(const CholeskyStiefelPoint& point) {
  ModelFile file;
  file.kind = ModelKind::Stiefel;
  file.n = static_cast<int>(point.y.rows());
  file.k = {point.a.dim()};
  file.matrices = {point.y, point.a.mat()};
  return file;
}

ModelFile from_spd(const SpdMatrix& a) {
  ModelFile file;
  file.kind = ModelKind::Spd;
  file.n = a.dim();
  file.matrices = {a.mat()};
  return file;
}

ModelFile from_product(const GrassmannProductPoint& point) {
  ModelFile file;
  file.kind = ModelKind::Product;
  file.n = static_cast<int>(point.projectors.front().rows());
  std::vector<int> ranks = point.ranks();
  int acc = 0;
  for (size_t i = 0; i + 1 < ranks.size(); ++i) {
    acc += ranks[i];
    file.k.push_back(acc);
  }
  file.matrices = point.projectors;
  return file;
}

}  // namespace smm
