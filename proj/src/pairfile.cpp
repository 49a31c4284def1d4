#include "bop/pairfile.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace bop {

namespace {

struct Line {
  int no;
  std::string text;  // comment stripped
};

struct Token {
  std::string text;
  int col;
};

std::vector<Token> split_ws(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace((unsigned char)s[j])) ++j;
    out.push_back({s.substr(i, j - i), (int)i + 1});
    i = j;
  }
  return out;
}

// Splits "a ; b ; c" into trimmed fields with their 1-based columns.
std::vector<Token> split_fields(const std::string& s, int col0) {
  std::vector<Token> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = s.find(';', start);
    std::string f = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::size_t a = 0;
    while (a < f.size() && std::isspace((unsigned char)f[a])) ++a;
    std::size_t b = f.size();
    while (b > a && std::isspace((unsigned char)f[b - 1])) --b;
    out.push_back({f.substr(a, b - a), col0 + (int)(start + a)});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    std::string s;
    int no = 0;
    while (std::getline(in, s)) {
      ++no;
      if (!s.empty() && s.back() == '\r') s.pop_back();
      auto h = s.find('#');
      if (h != std::string::npos) s = s.substr(0, h);
      if (split_ws(s).empty()) continue;
      lines_.push_back({no, s});
    }
    last_ = no + 1;
  }
  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next(const std::string& what) {
    if (done()) throw ParseError(last_, 1, "expected " + what + ", found end of file");
    return lines_[pos_++];
  }
  int end_line() const { return last_; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int last_ = 1;
};

RMat read_matrix(Reader& r, const std::string& var, const std::string& name) {
  RMat m(3, 3);
  for (int i = 0; i < 3; ++i) {
    const Line& l = r.next("row " + std::to_string(i + 1) + " of " + name);
    auto f = split_fields(l.text, 1);
    if (f.size() != 3)
      throw ParseError(l.no, 1, name + " row must have 3 entries separated by ';', found " + std::to_string(f.size()));
    for (int j = 0; j < 3; ++j) {
      if (f[j].text.empty()) throw ParseError(l.no, f[j].col, "empty matrix entry");
      m(i, j) = parse_ratfunc(f[j].text, var, l.no, f[j].col);
    }
  }
  return m;
}

}  // namespace

PairBD parse_pair(const std::string& text) {
  Reader r(text);
  {
    const Line& h = r.next("header");
    auto t = split_ws(h.text);
    if (t.size() != 2 || t[0].text != "pairbd") throw ParseError(h.no, t[0].col, "expected header 'pairbd 1'");
    if (t[1].text != "1") throw ParseError(h.no, t[1].col, "unsupported version " + t[1].text);
  }
  std::optional<std::string> var;
  std::optional<std::vector<Scalar>> pts;
  std::optional<RMat> B, D;
  int twist = 0;
  std::vector<FrameDecl> frames;
  bool have_frames = false;
  while (!r.done()) {
    const Line l = r.next("section");
    auto t = split_ws(l.text);
    const std::string& kw = t[0].text;
    auto once = [&](bool seen) {
      if (seen) throw ParseError(l.no, t[0].col, "duplicate section '" + kw + "'");
    };
    if (kw == "variable") {
      once(var.has_value());
      if (t.size() != 2) throw ParseError(l.no, t[0].col, "expected 'variable NAME'");
      const std::string& v = t[1].text;
      bool ok = std::isalpha((unsigned char)v[0]) && v != "i";
      for (char c : v) ok = ok && (std::isalnum((unsigned char)c) || c == '_');
      if (!ok) throw ParseError(l.no, t[1].col, "bad variable name '" + v + "'");
      if (B || D) throw ParseError(l.no, t[0].col, "variable must precede the matrices");
      var = v;
    } else if (kw == "divisor") {
      once(pts.has_value());
      pts.emplace();
      for (std::size_t k = 1; k < t.size(); ++k) pts->push_back(parse_scalar(t[k].text, l.no, t[k].col));
    } else if (kw == "B") {
      once(B.has_value());
      if (t.size() != 3 || t[1].text != "twist") throw ParseError(l.no, t[0].col, "expected 'B twist N'");
      try {
        std::size_t used = 0;
        twist = std::stoi(t[2].text, &used);
        if (used != t[2].text.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(l.no, t[2].col, "bad twist '" + t[2].text + "'");
      }
      B = read_matrix(r, var.value_or("z"), "B");
    } else if (kw == "D") {
      once(D.has_value());
      if (t.size() != 1) throw ParseError(l.no, t[1].col, "unexpected text after 'D'");
      D = read_matrix(r, var.value_or("z"), "D");
    } else if (kw == "frames") {
      once(have_frames);
      have_frames = true;
      for (;;) {
        const Line& f = r.next("'frame' or 'end'");
        auto ft = split_ws(f.text);
        if (ft[0].text == "end" && ft.size() == 1) break;
        if (ft[0].text != "frame" || ft.size() < 4) throw ParseError(f.no, ft[0].col, "expected 'frame POINT EIGENVALUE : v0 ; v1 ; v2'");
        auto colon = f.text.find(':');
        if (colon == std::string::npos) throw ParseError(f.no, ft[0].col, "missing ':'");
        FrameDecl d;
        d.point = parse_scalar(ft[1].text, f.no, ft[1].col);
        try {
          std::size_t used = 0;
          d.eigenvalue = std::stol(ft[2].text, &used);
          if (used != ft[2].text.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ParseError(f.no, ft[2].col, "bad eigenvalue '" + ft[2].text + "'");
        }
        auto fs = split_fields(f.text.substr(colon + 1), (int)colon + 2);
        if (fs.size() != 3) throw ParseError(f.no, (int)colon + 1, "frame vector needs 3 entries");
        for (auto& x : fs) {
          if (x.text.empty()) throw ParseError(f.no, x.col, "empty vector entry");
          d.vec.push_back(parse_scalar(x.text, f.no, x.col));
        }
        frames.push_back(d);
      }
    } else {
      throw ParseError(l.no, t[0].col, "unknown section '" + kw + "'");
    }
  }
  auto missing = [&](const char* s) { throw ParseError(r.end_line(), 1, std::string("missing section '") + s + "'"); };
  if (!var) missing("variable");
  if (!pts) missing("divisor");
  if (!B) missing("B");
  if (!D) missing("D");
  PairBD p;
  p.var = *var;
  p.B = {*B, twist};
  try {
    p.D = LogConnection{*D, BranchDivisor(*pts), JetFrame{"affine", kTT, "branch-adapted"}};
  } catch (const Error& e) {
    throw ParseError(r.end_line(), 1, e.what());
  }
  p.frames = frames;
  return p;
}

std::string write_pair(const PairBD& p) {
  std::ostringstream os;
  os << "pairbd 1\n";
  os << "variable " << p.var << "\n";
  os << "divisor";
  for (auto& x : p.D.divisor.points()) os << " " << x.str();
  os << "\n";
  auto mat = [&](const RMat& m) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) os << (j ? " ; " : "") << m(i, j).str(p.var);
      os << "\n";
    }
  };
  os << "B twist " << p.B.twist << "\n";
  mat(p.B.B);
  os << "D\n";
  mat(p.D.A);
  if (!p.frames.empty()) {
    os << "frames\n";
    for (auto& f : p.frames) {
      os << "frame " << f.point.str() << " " << f.eigenvalue << " :";
      for (std::size_t k = 0; k < f.vec.size(); ++k) os << (k ? " ; " : " ") << f.vec[k].str();
      os << "\n";
    }
    os << "end\n";
  }
  return os.str();
}

PairBD load_pair(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrKind::Usage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pair(ss.str());
}

}  // namespace bop
