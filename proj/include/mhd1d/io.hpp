#pragma once

//=============================================================================
// CSV readers/writers and the run metadata record. Column orders are frozen
// and versioned in the file headers; doubles are printed with %.17g so that
// written values round-trip exactly and reruns are byte-identical.
//=============================================================================

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mhd1d/diagnostics.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/grid.hpp"

namespace mhd1d {

inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

//-----------------------------------------------------------------------------
// generic CSV
//-----------------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    return -1;
  }
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (table.columns.empty()) {
      table.columns = cells;
      continue;
    }
    if (cells.size() != table.columns.size())
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected " + std::to_string(table.columns.size()) +
                        " cells, got " + std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      try {
        std::size_t used = 0;
        row[i] = std::stod(cells[i], &used);
        if (used != cells[i].size()) throw std::invalid_argument(cells[i]);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": cannot parse '" + cells[i] + "' as a number");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty())
    throw ConfigError(path + ": no header line found");
  return table;
}

//-----------------------------------------------------------------------------
// diagnostics series
//-----------------------------------------------------------------------------

inline const char* series_header() {
  return "# mhd1d series v1\n"
         "t,mass,total_energy,e_paper,e_balance,V,vint,min_v,max_v,"
         "min_theta,max_theta,l1_v_neg_alpha,h1_v,h1_u,h1_w,h1_b,h1_theta";
}

inline std::string series_row(const DiagnosticsSample& d) {
  std::string out;
  const double cols[] = {d.t,         d.mass,      d.total_energy,
                         d.e_paper,   d.e_balance, d.V,
                         d.vint,      d.min_v,     d.max_v,
                         d.min_theta, d.max_theta, d.l1_v_neg_alpha,
                         d.h1_v,      d.h1_u,      d.h1_w,
                         d.h1_b,      d.h1_theta};
  for (std::size_t i = 0; i < std::size(cols); ++i) {
    if (i) out += ',';
    out += fmt_double(cols[i]);
  }
  return out;
}

inline std::vector<DiagnosticsSample> read_series(const std::string& path) {
  const CsvTable t = read_csv(path);
  const char* names[] = {"t",         "mass",      "total_energy",
                         "e_paper",   "e_balance", "V",
                         "vint",      "min_v",     "max_v",
                         "min_theta", "max_theta", "l1_v_neg_alpha",
                         "h1_v",      "h1_u",      "h1_w",
                         "h1_b",      "h1_theta"};
  int idx[std::size(names)];
  for (std::size_t i = 0; i < std::size(names); ++i) {
    idx[i] = t.column_index(names[i]);
    if (idx[i] < 0)
      throw ConfigError(path + ": missing series column '" +
                        std::string(names[i]) + "'");
  }
  std::vector<DiagnosticsSample> out;
  for (const auto& row : t.rows) {
    DiagnosticsSample d;
    double* fields[] = {&d.t,         &d.mass,      &d.total_energy,
                        &d.e_paper,   &d.e_balance, &d.V,
                        &d.vint,      &d.min_v,     &d.max_v,
                        &d.min_theta, &d.max_theta, &d.l1_v_neg_alpha,
                        &d.h1_v,      &d.h1_u,      &d.h1_w,
                        &d.h1_b,      &d.h1_theta};
    for (std::size_t i = 0; i < std::size(names); ++i)
      *fields[i] = row[idx[i]];
    out.push_back(d);
  }
  return out;
}

//-----------------------------------------------------------------------------
// state snapshots and initial-state tables
//-----------------------------------------------------------------------------

// Centers file: x,v,u,w1,w2,b1,b2,theta with node fields averaged to
// centers. A companion .nodes.csv carries the node-sited fields verbatim.
inline void write_snapshot(const std::string& centers_path,
                           const std::string& nodes_path, const Grid& g,
                           const State& s) {
  {
    std::ofstream out(centers_path);
    if (!out) throw ConfigError("cannot write '" + centers_path + "'");
    out << "# mhd1d snapshot v1 (cell centers; u,w averaged from nodes)\n";
    out << "x,v,u,w1,w2,b1,b2,theta\n";
    for (int i = 0; i < g.n_cells; ++i) {
      const double uc = 0.5 * (s.u[i] + s.u[i + 1]);
      const double w1c = 0.5 * (s.w1[i] + s.w1[i + 1]);
      const double w2c = 0.5 * (s.w2[i] + s.w2[i + 1]);
      out << fmt_double(g.x_center(i)) << ',' << fmt_double(s.v[i]) << ','
          << fmt_double(uc) << ',' << fmt_double(w1c) << ','
          << fmt_double(w2c) << ',' << fmt_double(s.b1[i]) << ','
          << fmt_double(s.b2[i]) << ',' << fmt_double(s.theta[i]) << '\n';
    }
  }
  {
    std::ofstream out(nodes_path);
    if (!out) throw ConfigError("cannot write '" + nodes_path + "'");
    out << "# mhd1d snapshot v1 (nodes)\n";
    out << "x,u,w1,w2\n";
    for (int j = 0; j <= g.n_cells; ++j)
      out << fmt_double(g.x_node(j)) << ',' << fmt_double(s.u[j]) << ','
          << fmt_double(s.w1[j]) << ',' << fmt_double(s.w2[j]) << '\n';
  }
}

struct StateTable {
  std::vector<double> x, v, u, w1, w2, b1, b2, theta;
};

// Reads a sampled-profile table (the snapshot centers schema). Positivity of
// the v and theta columns is validated here so a bad initial-state file is
// rejected at configuration time.
inline StateTable read_state_table(const std::string& path) {
  const CsvTable t = read_csv(path);
  const char* names[] = {"x", "v", "u", "w1", "w2", "b1", "b2", "theta"};
  int idx[8];
  for (int i = 0; i < 8; ++i) {
    idx[i] = t.column_index(names[i]);
    if (idx[i] < 0)
      throw ConfigError(path + ": missing state column '" +
                        std::string(names[i]) + "'");
  }
  if (t.rows.size() < 2)
    throw ConfigError(path + ": need at least 2 sample rows");
  StateTable st;
  for (const auto& row : t.rows) {
    st.x.push_back(row[idx[0]]);
    st.v.push_back(row[idx[1]]);
    st.u.push_back(row[idx[2]]);
    st.w1.push_back(row[idx[3]]);
    st.w2.push_back(row[idx[4]]);
    st.b1.push_back(row[idx[5]]);
    st.b2.push_back(row[idx[6]]);
    st.theta.push_back(row[idx[7]]);
  }
  for (std::size_t i = 1; i < st.x.size(); ++i)
    if (!(st.x[i] > st.x[i - 1]))
      throw ConfigError(path + ": x column must be strictly increasing");
  for (std::size_t i = 0; i < st.x.size(); ++i) {
    if (!(st.v[i] > 0.0))
      throw ConfigError(path + ": invariant violated: v0 > 0 (row with x = " +
                        fmt_double(st.x[i]) + " has v = " + fmt_double(st.v[i]) +
                        ")");
    if (!(st.theta[i] > 0.0))
      throw ConfigError(path +
                        ": invariant violated: theta0 > 0 (row with x = " +
                        fmt_double(st.x[i]) + " has theta = " +
                        fmt_double(st.theta[i]) + ")");
  }
  return st;
}

namespace detail {
inline double interp1(const std::vector<double>& xs,
                      const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  std::size_t hi = 1;
  while (xs[hi] < x) ++hi;
  const double f = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
  return ys[hi - 1] + f * (ys[hi] - ys[hi - 1]);
}
} // namespace detail

// Linear resampling of a profile table onto the staggered grid. Node fields
// are re-pinned to zero at the walls afterwards.
inline State resample_state(const Grid& g, const StateTable& st) {
  State s(g);
  for (int i = 0; i < g.n_cells; ++i) {
    const double x = g.x_center(i);
    s.v[i] = detail::interp1(st.x, st.v, x);
    s.theta[i] = detail::interp1(st.x, st.theta, x);
    s.b1[i] = detail::interp1(st.x, st.b1, x);
    s.b2[i] = detail::interp1(st.x, st.b2, x);
  }
  for (int j = 0; j <= g.n_cells; ++j) {
    const double x = g.x_node(j);
    s.u[j] = detail::interp1(st.x, st.u, x);
    s.w1[j] = detail::interp1(st.x, st.w1, x);
    s.w2[j] = detail::interp1(st.x, st.w2, x);
  }
  apply_boundary(g, s);
  check_state_positive(s);
  return s;
}

//-----------------------------------------------------------------------------
// representation series
//-----------------------------------------------------------------------------

inline const char* representation_header() {
  return "# mhd1d representation v1\nt,Y,max_rel_err";
}

inline std::string representation_row(double t, double y, double max_rel_err) {
  return fmt_double(t) + "," + fmt_double(y) + "," + fmt_double(max_rel_err);
}

struct RepresentationRow {
  double t = 0.0, y = 0.0, max_rel_err = 0.0;
};

inline std::vector<RepresentationRow> read_representation(
    const std::string& path) {
  const CsvTable t = read_csv(path);
  const int it = t.column_index("t");
  const int iy = t.column_index("Y");
  const int ie = t.column_index("max_rel_err");
  if (it < 0 || iy < 0 || ie < 0)
    throw ConfigError(path + ": missing representation column");
  std::vector<RepresentationRow> out;
  for (const auto& row : t.rows)
    out.push_back({row[it], row[iy], row[ie]});
  return out;
}

} // namespace mhd1d
