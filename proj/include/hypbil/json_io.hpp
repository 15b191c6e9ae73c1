#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "hypbil/billiard.hpp"
#include "hypbil/filling.hpp"
#include "hypbil/optimize.hpp"
#include "hypbil/polygon.hpp"
#include "hypbil/surface.hpp"

// Deterministic JSON output: keys are emitted in a fixed (alphabetical)
// order and every float is printed with 15 significant digits, so identical
// inputs give byte-identical files.

namespace hypbil {
namespace jsonio {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

class Writer {
 public:
  Writer& begin_object() { return open('{'); }
  Writer& end_object() { return close('}'); }
  Writer& begin_array() { return open('['); }
  Writer& end_array() { return close(']'); }

  Writer& key(const std::string& k) {
    comma();
    out_ += '"';
    out_ += k;
    out_ += "\": ";
    pending_ = true;
    return *this;
  }

  Writer& value(double v) { return raw(num(v)); }
  Writer& value(int v) { return raw(std::to_string(v)); }
  Writer& value(size_t v) { return raw(std::to_string(v)); }
  Writer& value(bool v) { return raw(v ? "true" : "false"); }
  Writer& value(const char* s) { return value(std::string(s)); }
  Writer& value(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    q += '"';
    return raw(q);
  }

  template <typename T>
  Writer& kv(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

  Writer& numbers(const std::vector<double>& vs) {
    begin_array();
    for (double v : vs) value(v);
    return end_array();
  }
  Writer& integers(const std::vector<int>& vs) {
    begin_array();
    for (int v : vs) value(v);
    return end_array();
  }
  Writer& points(const std::vector<DiscPoint>& ps) {
    begin_array();
    for (const DiscPoint& p : ps) {
      begin_array();
      value(p.x);
      value(p.y);
      end_array();
    }
    return end_array();
  }

  // splice an already-serialized value (object or array) in place
  Writer& raw_json(const std::string& s) { return raw(s); }

  const std::string& str() const { return out_; }

 private:
  Writer& open(char c) {
    comma();
    out_ += c;
    fresh_ = true;
    return *this;
  }
  Writer& close(char c) {
    out_ += c;
    fresh_ = false;
    return *this;
  }
  Writer& raw(const std::string& s) {
    comma();
    out_ += s;
    return *this;
  }
  void comma() {
    if (pending_) {
      pending_ = false;
      return;
    }
    if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[')
      out_ += ", ";
    fresh_ = false;
  }

  std::string out_;
  bool fresh_ = true;
  bool pending_ = false;
};

}  // namespace jsonio

inline void write_table_fields(jsonio::Writer& w, const Table& T) {
  w.key("angles").numbers(T.angles);
  w.kv("holonomy_residual", T.holonomy_residual);
  w.key("side_lengths").numbers(T.side_lengths());
  w.key("vertices").points(T.vertices);
}

inline std::string json_of_table(const RightAngledPolygon& P,
                                 const std::string& type) {
  jsonio::Writer w;
  w.begin_object();
  write_table_fields(w, P);
  w.kv("k", P.k);
  w.kv("type", type);
  w.end_object();
  return w.str();
}

inline std::string json_of_table(const LambertQuad& Q) {
  jsonio::Writer w;
  w.begin_object();
  write_table_fields(w, Q);
  w.kv("k", Q.k);
  w.kv("side_a", Q.side_a);
  w.kv("side_b", Q.side_b);
  w.kv("t", Q.t);
  w.kv("type", "lambert");
  w.end_object();
  return w.str();
}

inline void write_trajectory_fields(jsonio::Writer& w,
                                    const BilliardTrajectory& t) {
  w.key("bounce_points").points(t.bounce_points);
  w.kv("odd_parity", t.odd_parity);
  w.key("segment_lengths").numbers(t.segment_lengths);
  w.key("sequence").integers(t.sequence);
  w.kv("total_length", t.total_length);
}

inline std::string json_of_trajectory(const BilliardTrajectory& t) {
  jsonio::Writer w;
  w.begin_object();
  write_trajectory_fields(w, t);
  w.end_object();
  return w.str();
}

// rebuild a table from serialized vertices: sides follow consecutive
// vertices, so the geometry is recomputed rather than trusted from the file
inline Table table_from_vertices(const std::vector<DiscPoint>& verts,
                                 double residual = 0.0) {
  size_t m = verts.size();
  std::vector<Geodesic> lines;
  lines.reserve(m);
  for (size_t i = 0; i < m; ++i)
    lines.push_back(geodesic_through(verts[i], verts[(i + 1) % m]));
  return detail::assemble_table(verts, lines, residual);
}

}  // namespace hypbil
