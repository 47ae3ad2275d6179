#include "liftlab/io.hpp"

#include <fstream>
#include <sstream>

namespace liftlab {

Json instance_to_json(const HPolytope& p) {
  Json rows = Json::array();
  for (int i = 0; i < p.m(); ++i) {
    Json coeffs = Json::array();
    for (int j = 0; j < p.n; ++j) coeffs.push_back(rat_str(p.A.at(i, j)));
    rows.push_back(Json{{"coeffs", coeffs}, {"rel", "<="}, {"rhs", rat_str(p.b[i])}});
  }
  return Json{{"n", p.n}, {"rows", rows}, {"name", p.name}};
}

HPolytope instance_from_json(const Json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::pair<RatVector, Rational>> rows;
  for (const Json& row : j.at("rows")) {
    if (row.at("rel").get<std::string>() != "<=")
      throw Error("instance rows must use the <= relation");
    RatVector coeffs;
    for (const Json& c : row.at("coeffs")) coeffs.push_back(rat_parse(c.get<std::string>()));
    if (int(coeffs.size()) != n) throw Error("instance row has wrong arity");
    rows.push_back({std::move(coeffs), rat_parse(row.at("rhs").get<std::string>())});
  }
  return HPolytope::make(n, std::move(rows), j.value("name", std::string()));
}

Json certificate_to_json(const Certificate& c) {
  Json rows = Json::array(), cols = Json::array();
  for (int i = 0; i < c.rows.size(); ++i) rows.push_back(c.rows[i].text());
  for (int j = 0; j < c.cols.size(); ++j) cols.push_back(c.cols[j].text());
  Json entries = Json::array();
  for (int i = 0; i < c.Y.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < c.Y.cols(); ++j) row.push_back(rat_str(c.Y.at(i, j)));
    entries.push_back(row);
  }
  Json xhat = Json::array();
  for (const Rational& v : c.xhat) xhat.push_back(rat_str(v));
  return Json{{"op", c.spec.text()}, {"n", c.n},      {"rows", rows},
              {"cols", cols},        {"Y", entries},  {"xhat", xhat}};
}

namespace {

GenCube cube_from_text(int n, const std::string& text) {
  // Format: S={...} T={...} caps=[({...},r),...]
  if (text == "Empty") {
    GenCube c;
    c.n = n;
    c.empty = true;
    return c;
  }
  auto parse_set = [](const std::string& s) {
    IndexSet out;
    std::string cur;
    for (char ch : s) {
      if (std::isdigit(ch)) {
        cur += ch;
      } else {
        if (!cur.empty()) out.push_back(std::stoi(cur) - 1);
        cur.clear();
      }
    }
    if (!cur.empty()) out.push_back(std::stoi(cur) - 1);
    return out;
  };
  auto spos = text.find("S=");
  auto tpos = text.find(" T=");
  auto cpos = text.find(" caps=[");
  if (spos == std::string::npos || tpos == std::string::npos || cpos == std::string::npos)
    throw Error("bad cube text: " + text);
  GenCube c;
  c.n = n;
  c.S = parse_set(text.substr(spos + 2, tpos - spos - 2));
  c.T = parse_set(text.substr(tpos + 3, cpos - tpos - 3));
  std::string caps = text.substr(cpos + 7);
  if (!caps.empty() && caps.back() == ']') caps.pop_back();
  std::size_t at = 0;
  while ((at = caps.find('(', at)) != std::string::npos) {
    auto close_brace = caps.find('}', at);
    auto close_paren = caps.find(')', at);
    if (close_brace == std::string::npos || close_paren == std::string::npos)
      throw Error("bad cap text: " + text);
    CardCap cap;
    cap.U = parse_set(caps.substr(at + 1, close_brace - at));
    cap.r = std::stoi(caps.substr(close_brace + 2, close_paren - close_brace - 2));
    c.caps.push_back(std::move(cap));
    at = close_paren + 1;
  }
  return normalize(c);
}

}  // namespace

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.spec = OperatorSpec::parse(j.at("op").get<std::string>());
  c.n = j.at("n").get<int>();
  c.rows = IndexFamily(c.n);
  c.cols = IndexFamily(c.n);
  for (const Json& t : j.at("rows")) c.rows.add(cube_from_text(c.n, t.get<std::string>()));
  for (const Json& t : j.at("cols")) c.cols.add(cube_from_text(c.n, t.get<std::string>()));
  const Json& y = j.at("Y");
  c.Y = RatMatrix(int(y.size()), y.empty() ? 0 : int(y[0].size()));
  for (int i = 0; i < c.Y.rows(); ++i)
    for (int jj = 0; jj < c.Y.cols(); ++jj)
      c.Y.at(i, jj) = rat_parse(y[i][jj].get<std::string>());
  for (const Json& v : j.at("xhat")) c.xhat.push_back(rat_parse(v.get<std::string>()));
  return c;
}

Json rank_report_to_json(const RankReport& r) {
  Json levels = Json::array();
  for (const LevelVerdict& v : r.levels) {
    Json l{{"k", v.k}, {"equals_hull", v.equals_hull}};
    if (!v.equals_hull && !v.witness_direction.empty()) {
      Json dir = Json::array();
      for (const Rational& c : v.witness_direction) dir.push_back(rat_str(c));
      l["witness_direction"] = dir;
      l["lifted_value"] = rat_str(v.lifted_value);
      l["hull_value"] = rat_str(v.hull_value);
    }
    levels.push_back(l);
  }
  Json out{{"instance", r.instance},
           {"iterated", r.iterated},
           {"levels", levels},
           {"lower_bound_only", r.lower_bound_only}};
  out["op"] = OperatorSpec{r.family, 1}.text();
  if (r.rank >= 0) out["rank"] = r.rank;
  return out;
}

Json gap_report_to_json(const GapReport& r) {
  Json out{{"op", r.op.text()},
           {"instance", r.instance},
           {"exact", r.exact},
           {"hull_value", rat_str(r.hull_value)}};
  Json dir = Json::array();
  for (const Rational& c : r.direction) dir.push_back(rat_str(c));
  out["direction"] = dir;
  if (r.exact) {
    out["relax_value"] = rat_str(r.relax_value);
    out["gamma"] = rat_str(r.gamma);
  } else {
    out["relax_value_approx"] = r.relax_value_f;
    out["gamma_approx"] = r.gamma_f;
  }
  return out;
}

Json sizes_to_json(const BZSizes& s) {
  return Json{{"obstructions", s.obstructions}, {"walls", s.walls},
              {"tiers", s.tiers},               {"variables", s.variables},
              {"constraints", s.constraints},   {"constraints_raw", s.constraints_raw}};
}

Json dominance_report_to_json(const DominanceReport& r) {
  Json rows = Json::array();
  for (const DominanceRow& row : r.rows) {
    Json dir = Json::array();
    for (const Rational& c : row.direction) dir.push_back(rat_str(c));
    Json jr{{"direction", dir}, {"respected", row.respected}};
    if (row.weaker.exact)
      jr["weaker_value"] = rat_str(row.weaker.value);
    else
      jr["weaker_value_approx"] = row.weaker.value_f;
    if (row.stronger.exact)
      jr["stronger_value"] = rat_str(row.stronger.value);
    else
      jr["stronger_value_approx"] = row.stronger.value_f;
    rows.push_back(jr);
  }
  return Json{{"weaker", r.weaker_op.text()},
              {"stronger", r.stronger_op.text()},
              {"instance", r.instance},
              {"respected", r.respected},
              {"note", r.note},
              {"rows", rows}};
}

std::string gap_table_csv(const std::vector<GapReport>& rows) {
  std::ostringstream os;
  os << "op,instance,exact,relax_value,hull_value,gamma\n";
  for (const GapReport& r : rows) {
    os << r.op.text() << "," << r.instance << "," << (r.exact ? "1" : "0") << ",";
    if (r.exact)
      os << rat_str(r.relax_value) << "," << rat_str(r.hull_value) << "," << rat_str(r.gamma);
    else
      os << r.relax_value_f << "," << rat_str(r.hull_value) << "," << r.gamma_f << " (approx)";
    os << "\n";
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace liftlab
