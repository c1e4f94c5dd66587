#include "bpchess/ml/model_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace bpchess::ml {
namespace {

constexpr const char* kMagic = "bpchess-model 1";

void put(std::ostream& out, double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, r.ptr - buf);
}

template <typename Derived>
void put_matrix(std::ostream& out, const std::string& name, const Eigen::MatrixBase<Derived>& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      put(out, m(r, c));
    }
    out << '\n';
  }
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) throw ModelFormatError("unexpected end of model file");
    ++lineno_;
    return s;
  }

  std::pair<std::string, std::string> field(const std::string& key) {
    const std::string s = line();
    const auto sp = s.find(' ');
    if (s.substr(0, sp) != key) throw ModelFormatError(where() + "expected '" + key + "'");
    return {key, sp == std::string::npos ? "" : s.substr(sp + 1)};
  }

  double number(std::string_view tok) {
    double v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw ModelFormatError(where() + "bad number '" + std::string(tok) + "'");
    }
    return v;
  }

  std::vector<double> numbers(const std::string& s) {
    std::vector<double> v;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) v.push_back(number(tok));
    return v;
  }

  Matrix<double> matrix(const std::string& name) {
    std::istringstream hs(field("matrix").second);
    std::string got;
    Eigen::Index rows = -1, cols = -1;
    hs >> got >> rows >> cols;
    if (got != name || rows < 0 || cols < 0) throw ModelFormatError(where() + "expected matrix " + name);
    Matrix<double> m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto v = numbers(line());
      if (static_cast<Eigen::Index>(v.size()) != cols) throw ModelFormatError(where() + "wrong row length");
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v[c];
    }
    return m;
  }

  std::string where() const { return "model line " + std::to_string(lineno_) + ": "; }

 private:
  std::istream& in_;
  int lineno_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const ModelParams& m) {
  out << kMagic << '\n';
  out << "family " << family_name(m.family) << '\n';
  out << "task " << task_name(m.task()) << '\n';
  out << "schema " << m.schema_version << '\n';
  out << "dims " << m.dims << '\n';
  out << "seed " << m.seed << '\n';
  for (const auto& [k, v] : m.hyper) out << "hyper " << k << '=' << v << '\n';
  out << "end-header\n";
  put_matrix(out, "mean", m.standardizer.mean.transpose());
  put_matrix(out, "scale", m.standardizer.scale.transpose());
  if (m.family == Family::Mlp) {
    out << "layers " << m.mlp.layers() << '\n';
    for (std::size_t l = 0; l < m.mlp.layers(); ++l) {
      put_matrix(out, "W" + std::to_string(l), m.mlp.weights[l]);
      put_matrix(out, "b" + std::to_string(l), m.mlp.biases[l].transpose());
    }
  } else {
    put_matrix(out, "w", m.linear.w.transpose());
    Eigen::Matrix<double, 1, 1> b;
    b(0, 0) = m.linear.b;
    put_matrix(out, "b", b);
  }
}

void write_model(const std::string& path, const ModelParams& model) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_model(f, model);
  if (!f) throw std::runtime_error("write failed: " + path);
}

ModelParams read_model(std::istream& in) {
  Reader r(in);
  if (r.line() != kMagic) throw ModelFormatError("not a bpchess model file");
  ModelParams m;
  const auto fam = parse_family(r.field("family").second);
  if (!fam) throw ModelFormatError(r.where() + "unknown family");
  m.family = *fam;
  if (r.field("task").second != task_name(m.task())) throw ModelFormatError(r.where() + "task does not match family");
  m.schema_version = r.field("schema").second;
  m.dims = static_cast<std::size_t>(r.number(r.field("dims").second));
  m.seed = std::stoull(r.field("seed").second);
  for (std::string s; (s = r.line()) != "end-header";) {
    if (s.rfind("hyper ", 0) != 0) throw ModelFormatError(r.where() + "unexpected header line '" + s + "'");
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ModelFormatError(r.where() + "hyperparameter without '='");
    m.hyper.emplace_back(s.substr(6, eq - 6), s.substr(eq + 1));
  }
  m.standardizer.mean = r.matrix("mean").transpose();
  m.standardizer.scale = r.matrix("scale").transpose();
  if (m.standardizer.mean.size() != static_cast<Eigen::Index>(m.dims) ||
      m.standardizer.scale.size() != static_cast<Eigen::Index>(m.dims)) {
    throw ModelFormatError("standardisation length does not match dims");
  }
  if (m.family == Family::Mlp) {
    const auto layers = static_cast<std::size_t>(r.number(r.field("layers").second));
    for (std::size_t l = 0; l < layers; ++l) {
      m.mlp.weights.push_back(r.matrix("W" + std::to_string(l)));
      m.mlp.biases.push_back(r.matrix("b" + std::to_string(l)).transpose());
    }
  } else {
    m.linear.w = r.matrix("w").transpose();
    m.linear.b = r.matrix("b")(0, 0);
    if (m.linear.w.size() != static_cast<Eigen::Index>(m.dims)) throw ModelFormatError("weight length does not match dims");
  }
  return m;
}

ModelParams read_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  return read_model(f);
}

}  // namespace bpchess::ml
