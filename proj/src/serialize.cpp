// Copyright 2026 The qwalkback Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cstdio>
#include <sstream>

#include "qwb/circuit.hpp"
#include "qwb/error.hpp"

namespace qwb {

namespace {

std::string join_ints(const std::vector<Qubit>& v) {
  if (v.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string format_double(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::vector<std::string> split(const std::string& field, char sep) {
  std::vector<std::string> out;
  if (field == "-") return out;
  std::string cur;
  std::istringstream in(field);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad integer '" + s + "'", line);
  }
  return v;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad number '" + s + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number '" + s + "'", line);
  }
}

}  // namespace

std::string to_text(const Circuit& c) {
  std::ostringstream out;
  out << "QUBITS " << c.num_qubits() << '\n';
  for (const Gate& g : c.gates()) {
    out << "GATE " << kind_name(g.kind) << ' ';
    if (g.params.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        if (i) out << ',';
        out << format_double(g.params[i]);
      }
    }
    out << ' ' << join_ints(g.targets) << ' ' << join_ints(g.controls) << ' ';
    if (g.polarity.empty()) {
      out << '-';
    } else {
      for (bool p : g.polarity) out << (p ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

Circuit from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Circuit c;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "QUBITS") {
      int n = -1;
      if (have_header || !(ls >> n) || n < 0) throw ParseError("bad QUBITS header", lineno);
      c = Circuit(n);
      have_header = true;
      continue;
    }
    if (tag != "GATE") throw ParseError("expected GATE or QUBITS", lineno);
    if (!have_header) throw ParseError("GATE before QUBITS header", lineno);
    std::string kind, params, targets, controls, pols, extra;
    if (!(ls >> kind >> params >> targets >> controls >> pols) || (ls >> extra)) {
      throw ParseError("expected 5 fields after GATE", lineno);
    }
    auto k = kind_from_name(kind);
    if (!k) throw ParseError("unknown gate kind '" + kind + "'", lineno);
    Gate g;
    g.kind = *k;
    for (const auto& p : split(params, ',')) g.params.push_back(parse_double(p, lineno));
    for (const auto& t : split(targets, ',')) g.targets.push_back(parse_int(t, lineno));
    for (const auto& t : split(controls, ',')) g.controls.push_back(parse_int(t, lineno));
    if (pols != "-") {
      for (char ch : pols) {
        if (ch != '0' && ch != '1') throw ParseError("polarity must be 0/1", lineno);
        g.polarity.push_back(ch == '1');
      }
    }
    try {
      c.append_physical(g);
    } catch (const UsageError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!have_header) throw ParseError("missing QUBITS header");
  return c;
}

}  // namespace qwb
