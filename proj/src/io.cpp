#include "qbps/io.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qbps/errors.hpp"
#include "qbps/rational.hpp"

namespace qbps {

namespace {

struct Tok {
  std::string text;
  int col = 0; // 1-based
};

std::vector<Tok> tokenize(const std::string& line) {
  std::vector<Tok> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() && line[i] != '#' &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw input_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                    msg);
}

long parse_count(const Tok& t, int line, const std::string& what) {
  if (t.text.empty() || t.text.size() > 9) fail(line, t.col, "malformed " + what);
  for (char c : t.text)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail(line, t.col, "malformed " + what);
  return std::stol(t.text);
}

Rat parse_rat(const Tok& t, int line) {
  const std::string& s = t.text;
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  size_t d0 = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  bool ok = i > d0;
  if (ok && i < s.size()) {
    ok = s[i] == '/';
    if (ok) {
      ++i;
      size_t d1 = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      ok = i > d1 && i == s.size();
    }
  }
  if (!ok) fail(line, t.col, "malformed rational '" + s + "'");
  Rat r(s);
  if (r.get_den() == 0) fail(line, t.col, "rational '" + s + "' has a zero denominator");
  r.canonicalize();
  return r;
}

} // namespace

std::pair<Quiver, Potential> parse_input(const std::string& text) {
  Quiver Q;
  std::vector<std::pair<Rat, Word>> terms;
  bool have_vertices = false;
  int section = 0; // 0 before any header, 1 quiver, 2 potential
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<Tok> toks = tokenize(line);
    if (toks.empty()) continue;
    const Tok& head = toks[0];
    if (head.text == "[quiver]") {
      if (toks.size() != 1) fail(ln, toks[1].col, "unexpected token after section header");
      if (section != 0) fail(ln, head.col, "duplicate [quiver] section");
      section = 1;
      continue;
    }
    if (head.text == "[potential]") {
      if (toks.size() != 1) fail(ln, toks[1].col, "unexpected token after section header");
      if (section == 0) fail(ln, head.col, "[potential] must come after [quiver]");
      if (section == 2) fail(ln, head.col, "duplicate [potential] section");
      section = 2;
      continue;
    }
    if (section == 0) fail(ln, head.col, "expected a section header before '" + head.text + "'");
    if (section == 1) {
      if (head.text == "vertices") {
        if (toks.size() != 3 || toks[1].text != "=")
          fail(ln, head.col, "expected 'vertices = <count>'");
        if (have_vertices) fail(ln, head.col, "duplicate vertex count");
        long n = parse_count(toks[2], ln, "vertex count");
        if (n < 1) fail(ln, toks[2].col, "vertex count must be at least 1");
        Q.vertex_count = static_cast<int>(n);
        have_vertices = true;
      } else if (head.text == "arrow") {
        if (toks.size() != 4) fail(ln, head.col, "expected 'arrow <name> <source> <target>'");
        if (!have_vertices) fail(ln, head.col, "the vertex count must come before arrows");
        const std::string& name = toks[1].text;
        if (Q.arrow_index(name) >= 0)
          fail(ln, toks[1].col, "duplicate arrow name '" + name + "'");
        long src = parse_count(toks[2], ln, "source vertex");
        long tgt = parse_count(toks[3], ln, "target vertex");
        if (src >= Q.vertex_count) fail(ln, toks[2].col, "source vertex out of range");
        if (tgt >= Q.vertex_count) fail(ln, toks[3].col, "target vertex out of range");
        Q.arrows.push_back({name, static_cast<int>(src), static_cast<int>(tgt)});
      } else {
        fail(ln, head.col, "unknown directive '" + head.text + "' in [quiver]");
      }
    } else {
      if (head.text != "term")
        fail(ln, head.col, "unknown directive '" + head.text + "' in [potential]");
      if (toks.size() < 3) fail(ln, head.col, "expected 'term <coefficient> <arrow names>'");
      Rat c = parse_rat(toks[1], ln);
      Word w;
      for (size_t i = 2; i < toks.size(); ++i) {
        int a = Q.arrow_index(toks[i].text);
        if (a < 0) fail(ln, toks[i].col, "unknown arrow '" + toks[i].text + "'");
        w.push_back(a);
      }
      for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (Q.arrows[w[i]].target != Q.arrows[w[i + 1]].source)
          fail(ln, toks[3 + i].col,
               "word is not composable at '" + toks[3 + i].text + "'");
      }
      if (Q.arrows[w.back()].target != Q.arrows[w.front()].source)
        fail(ln, toks[2].col, "word is not closed");
      terms.push_back({c, w});
    }
  }
  if (section == 0) throw input_error("missing [quiver] section");
  if (!have_vertices) throw input_error("missing 'vertices' line in [quiver]");
  Q.validate();
  if (!Q.symmetric())
    throw input_error("the quiver is not symmetric: opposite arrow counts differ");
  Potential W = make_potential(Q, terms);
  return {Q, W};
}

std::string print_input(const Quiver& Q, const Potential& W) {
  std::ostringstream out;
  out << "[quiver]\n";
  out << "vertices = " << Q.vertex_count << "\n";
  for (const auto& a : Q.arrows) out << "arrow " << a.name << " " << a.source << " " << a.target << "\n";
  out << "[potential]\n";
  for (const auto& [w, c] : W.terms) {
    out << "term " << rat_str(c);
    for (int idx : w) out << " " << Q.arrows[idx].name;
    out << "\n";
  }
  return out.str();
}

} // namespace qbps
