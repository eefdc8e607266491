#include "vst/artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <json.hpp>
#include <map>
#include <numeric>
#include <sstream>

#include "vst/error.hpp"

namespace vst {

using json = nlohmann::json;

namespace {

json parse_doc(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string(what) + ": " + e.what());
  }
}

std::vector<std::uint64_t> split_row(const std::string& line, std::size_t lineno, std::size_t fields) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    auto cell = std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
      throw Error(Errc::parse, "line " + std::to_string(lineno) + ": expected non-negative integers");
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != fields) {
    throw Error(Errc::parse, "line " + std::to_string(lineno) + ": expected " + std::to_string(fields) + " fields");
  }
  return out;
}

std::string rational_text(std::uint64_t num, std::uint64_t den) {
  const auto g = std::gcd(num, den);
  if (g == 0) return "0";
  num /= g;
  den /= g;
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace

std::string bounds_json(const LayerProfile& profile) {
  json j;
  j["P"] = profile.vertices;
  j["d"] = profile.degree;
  j["D"] = profile.diameter;
  j["distance_sum"] = profile.distance_sum();
  j["average_distance"] = rational_text(profile.distance_sum(), profile.vertices);
  j["n"] = profile.n;
  j["N"] = profile.big_n;
  j["theta"] = profile.theta;
  return j.dump(2) + "\n";
}

std::string words_json(const Network& net, const WordsReport& report) {
  json j;
  json words = json::object();
  json vertices = json::array();
  for (Vertex v = 0; v < report.words.words.size(); ++v) {
    words[std::to_string(v)] = report.words.words[v];
    vertices.push_back(net.vertex_label(v));
  }
  j["words"] = std::move(words);
  j["vertices"] = std::move(vertices);
  j["occurrences"] = generator_occurrences(report.words, net.degree());
  j["psi_W"] = regular_bound_for(report.words, net.degree());
  j["theta"] = report.theta;
  j["mode"] = report.mode;
  j["shortest"] = report.words.shortest;
  if (report.psi_exact) {
    j["psi_exact"] = *report.psi_exact;
    j["exact"] = report.exact;
  }
  return j.dump(2) + "\n";
}

WordSet read_words_json(std::string_view text, std::size_t n) {
  auto j = parse_doc(text, "words file");
  if (!j.is_object() || !j.contains("words") || !j["words"].is_object()) {
    throw Error(Errc::parse, "words file: expected {\"words\": {vertex: [labels]}}");
  }
  WordSet out;
  out.words.resize(n);
  std::vector<bool> seen(n, false);
  for (const auto& [key, value] : j["words"].items()) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
    if (ec != std::errc() || ptr != key.data() + key.size() || v >= n) {
      throw Error(Errc::parse, "words file: /words/" + key + " is not a vertex of this graph");
    }
    try {
      out.words[v] = value.get<Word>();
    } catch (const json::exception&) {
      throw Error(Errc::parse, "words file: /words/" + key + " must be an array of labels");
    }
    seen[v] = true;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) throw Error(Errc::validation, "words file has no word for vertex " + std::to_string(v));
  }
  if (j.contains("shortest") && j["shortest"].is_boolean()) out.shortest = j["shortest"].get<bool>();
  return out;
}

std::string factorization_json(const SpanningFactorization& f, bool is_short, std::string_view source) {
  json j;
  j["n"] = f.base.n;
  j["d"] = f.base.d;
  j["factors"] = f.base.succ;
  j["words"] = f.words;
  j["short"] = is_short;
  j["source"] = source;
  return j.dump() + "\n";
}

SpanningFactorization read_factorization_json(std::string_view text, const Digraph& g) {
  auto j = parse_doc(text, "factorization file");
  SpanningFactorization out;
  try {
    out.base.n = j.at("n").get<std::size_t>();
    out.base.d = j.at("d").get<std::size_t>();
    out.base.succ = j.at("factors").get<std::vector<std::vector<Vertex>>>();
    out.words = j.at("words").get<std::vector<Word>>();
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("factorization file: ") + e.what());
  }
  auto& f = out.base;
  if (f.n != g.n || f.succ.size() != f.d || f.n * f.d != g.arcs.size()) {
    throw Error(Errc::validation, "factorization does not fit this graph (size or degree differs)");
  }
  // Arcs between the same pair are interchangeable; hand them out in order.
  std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> pool;
  for (std::size_t a = g.arcs.size(); a-- > 0;) pool[g.arcs[a]].push_back(a);
  f.factor_of.assign(g.arcs.size(), 0);
  f.arc_of.assign(f.d, std::vector<std::size_t>(f.n, 0));
  for (std::uint32_t k = 0; k < f.d; ++k) {
    if (f.succ[k].size() != f.n) throw Error(Errc::validation, "factor " + std::to_string(k) + " has the wrong length");
    for (Vertex v = 0; v < f.n; ++v) {
      auto it = pool.find({v, f.succ[k][v]});
      if (it == pool.end() || it->second.empty()) {
        throw Error(Errc::validation, "factor " + std::to_string(k) + " uses " + std::to_string(v) + "->" +
                                          std::to_string(f.succ[k][v]) + ", which is not a free arc of the graph");
      }
      const auto a = it->second.back();
      it->second.pop_back();
      f.arc_of[k][v] = a;
      f.factor_of[a] = k;
    }
  }
  check_one_factorization(f, g);
  return out;
}

std::string schedule_csv(std::span<const Word> words, const Schedule& s) {
  std::ostringstream out;
  out << "word_target,position,factor,time\n";
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t p = 0; p < words[i].size(); ++p) {
      out << i << ',' << p << ',' << words[i][p] << ',' << s.times.at(i).at(p) << '\n';
    }
  }
  return out.str();
}

ScheduleTable read_schedule_csv(std::string_view text, std::size_t n) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::map<std::uint64_t, std::map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.starts_with("word_target")) continue;
    auto r = split_row(line, lineno, 4);
    if (r[0] >= n) throw Error(Errc::validation, "line " + std::to_string(lineno) + ": word_target out of range");
    if (!rows[r[0]].emplace(r[1], std::pair{static_cast<std::uint32_t>(r[2]), static_cast<std::uint32_t>(r[3])}).second) {
      throw Error(Errc::validation, "line " + std::to_string(lineno) + ": duplicate position");
    }
  }
  ScheduleTable out;
  out.words.resize(n);
  out.schedule.times.resize(n);
  for (const auto& [target, letters] : rows) {
    std::uint64_t expect = 0;
    for (const auto& [pos, entry] : letters) {
      if (pos != expect++) {
        throw Error(Errc::validation, "word " + std::to_string(target) + " has a gap at position " +
                                          std::to_string(expect - 1));
      }
      out.words[target].push_back(entry.first);
      out.schedule.times[target].push_back(entry.second);
    }
  }
  return out;
}

std::string schedule_summary_json(const ScheduleSummary& s) {
  json j;
  j["makespan"] = s.makespan;
  j["flags"] = {{"balanced", s.flags.balanced},
                {"short", s.flags.is_short},
                {"optimal", s.flags.optimal},
                {"minimum", s.flags.minimum}};
  json bounds;
  bounds["theta"] = s.theta;
  bounds["psi_for_W"] = s.psi_for_w;
  bounds["corollary6"] = s.corollary6 ? json(*s.corollary6) : json(nullptr);
  bounds["distance_bound"] = s.flags.distance_bound;
  bounds["average_load"] = s.flags.average_load;
  j["bounds"] = std::move(bounds);
  j["exact"] = s.exact;
  j["method"] = s.method;
  return j.dump(2) + "\n";
}

std::string trace_csv(const TransposeTrace& trace) {
  std::ostringstream out;
  out << "time,src,dst,gen,packet_src,packet_dst\n";
  for (const auto& o : trace.occupancy) {
    out << o.time << ',' << o.tail << ',' << o.head << ',' << o.label << ',' << o.packet.first << ','
        << o.packet.second << '\n';
  }
  return out.str();
}

std::string Verdict::line() const {
  return "tau=" + std::to_string(tau) + " theta=" + std::to_string(theta) + " psi_W=" + std::to_string(psi_w) +
         " optimal=" + (optimal ? "true" : "false");
}

Verdict make_verdict(const TransposeTrace& trace, std::uint64_t theta, std::uint64_t psi_w) {
  Verdict v;
  v.tau = trace.horizon;
  v.theta = theta;
  v.psi_w = psi_w;
  v.conflicts = trace.conflicts.size();
  v.undelivered = trace.undelivered.size();
  v.malformed = trace.malformed.size();
  v.duplicates = trace.duplicates.size();
  v.optimal = trace.valid() && v.tau == theta;
  return v;
}

std::string verdict_json(const Verdict& v) {
  json j;
  j["tau"] = v.tau;
  j["theta"] = v.theta;
  j["psi_W"] = v.psi_w;
  j["conflicts"] = v.conflicts;
  j["undelivered"] = v.undelivered;
  j["malformed"] = v.malformed;
  j["duplicates"] = v.duplicates;
  j["optimal"] = v.optimal;
  j["delivered"] = v.conflicts == 0 && v.undelivered == 0 && v.malformed == 0 && v.duplicates == 0;
  return j.dump(2) + "\n";
}

}  // namespace vst
