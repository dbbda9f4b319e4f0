#include "sperner/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sperner {

namespace {

using nlohmann::json;

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

int get_int(const json& j, const std::string& where, long lo, long hi) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi)
    throw ParseError(where, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  return static_cast<int>(v);
}

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError("/" + std::string(name), "missing field");
  return *it;
}

// log10 of a positive integer, good to double precision.
double log10_of(const BigNat& v) {
  const std::string s = v.str();
  const std::size_t lead = std::min<std::size_t>(s.size(), 15);
  return std::log10(std::stod(s.substr(0, lead))) + static_cast<double>(s.size() - lead);
}

}  // namespace

std::string system_to_json(const PartitionSystem& sys) {
  std::ostringstream out;
  out << "{\"n\": " << sys.n << ", \"k\": " << sys.k << ", \"partitions\": [";
  for (std::size_t i = 0; i < sys.partitions.size(); ++i) {
    out << (i ? ",\n  " : "\n  ") << json(sys.partitions[i]).dump();
  }
  out << (sys.partitions.empty() ? "]}\n" : "\n]}\n");
  return out.str();
}

PartitionSystem system_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_col(text, e.byte ? e.byte - 1 : 0), "malformed JSON");
  }
  if (!doc.is_object()) throw ParseError("/", "expected an object");
  PartitionSystem sys;
  sys.n = get_int(field(doc, "n"), "/n", 1, 1 << 20);
  sys.k = get_int(field(doc, "k"), "/k", 1, sys.n);
  const json& parts = field(doc, "partitions");
  if (!parts.is_array()) throw ParseError("/partitions", "expected an array");
  sys.partitions.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string pi = "/partitions/" + std::to_string(i);
    if (!parts[i].is_array()) throw ParseError(pi, "expected an array of classes");
    Partition part;
    for (std::size_t j = 0; j < parts[i].size(); ++j) {
      const std::string pj = pi + "/" + std::to_string(j);
      const json& cls = parts[i][j];
      if (!cls.is_array()) throw ParseError(pj, "expected an array of elements");
      Class c;
      for (std::size_t e = 0; e < cls.size(); ++e)
        c.push_back(get_int(cls[e], pj + "/" + std::to_string(e), 0, sys.n - 1));
      part.push_back(std::move(c));
    }
    sys.partitions.push_back(std::move(part));
  }
  return sys;
}

PartitionSystem read_system_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return system_from_json(buf.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path);
}

void write_system_file(const std::string& path, const PartitionSystem& sys) {
  write_text_file(path, system_to_json(sys));
}

std::vector<TableRow> bounds_table(int k_min, int k_max, int n_max) {
  std::vector<TableRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    if (n_max < 2 * k + 2) continue;
    const auto cells = aggregate(k, n_max);
    for (int n = 2 * k + 2; n <= n_max; ++n) {
      const auto& cell = cells[static_cast<std::size_t>(n - k)];
      const Params p(n, k);
      TableRow row;
      row.n = n;
      row.k = k;
      row.lower = cell.lower.value;
      row.lower_source = cell.lower.source.str();
      row.upper = cell.upper.value;
      row.mms_floor = mms_floor(p);
      row.upper_gap = row.mms_floor - row.upper;
      row.nlb = nlb(p);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<FigureRow> figure_rows(int k, int n_max) {
  std::vector<FigureRow> rows;
  if (n_max < 2 * k + 2) return rows;
  const auto cells = aggregate(k, n_max);
  for (int n = 2 * k + 2; n <= n_max; ++n) {
    const auto& cell = cells[static_cast<std::size_t>(n - k)];
    const Params p(n, k);
    rows.push_back({n, nlb(p), cell.lower.value, cell.upper.value, mms_floor(p)});
  }
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

const char* const kTableHeader = "n,k,lower,lower_source,upper,upper_gap_vs_mms_floor,nlb,mms_floor";
const char* const kFigureHeader = "n,nlb,best_lower,best_upper,mms_floor";

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << kTableHeader << '\n';
  for (const auto& r : rows)
    out << r.n << ',' << r.k << ',' << r.lower.str() << ',' << csv_field(r.lower_source) << ',' << r.upper.str()
        << ',' << r.upper_gap.str() << ',' << r.nlb.str() << ',' << r.mms_floor.str() << '\n';
}

void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows) {
  out << kFigureHeader << '\n';
  for (const auto& r : rows)
    out << r.n << ',' << r.nlb.str() << ',' << r.best_lower.str() << ',' << r.best_upper.str() << ','
        << r.mms_floor.str() << '\n';
}

std::string figure_svg(int k, const std::vector<FigureRow>& rows) {
  constexpr double W = 720, H = 480, L = 70, R = 20, T = 40, B = 50;
  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << "Bounds on SP(n," << k << ")</text>\n";
  if (rows.empty()) {
    svg << "</svg>\n";
    return svg.str();
  }
  double ylo = 1e300, yhi = -1e300;
  for (const auto& r : rows) {
    ylo = std::min(ylo, log10_of(std::max<BigNat>(r.nlb, 1)));
    yhi = std::max(yhi, log10_of(r.mms_floor));
  }
  ylo = std::floor(ylo);
  yhi = std::max(std::ceil(yhi), ylo + 1);
  const double xlo = rows.front().n, xhi = std::max<double>(rows.back().n, xlo + 1);
  auto X = [&](double n) { return L + (n - xlo) / (xhi - xlo) * (W - L - R); };
  auto Y = [&](const BigNat& v) {
    return H - B - (log10_of(std::max<BigNat>(v, 1)) - ylo) / (yhi - ylo) * (H - T - B);
  };

  svg << "<g stroke=\"#888\" stroke-width=\"1\">\n"
      << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\"/>\n</g>\n";
  const int ystep = std::max(1, static_cast<int>((yhi - ylo) / 8));
  for (int e = static_cast<int>(ylo); e <= static_cast<int>(yhi); e += ystep) {
    const double y = H - B - (e - ylo) / (yhi - ylo) * (H - T - B);
    svg << "<text x=\"" << L - 6 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e << "</text>\n";
  }
  const int xstep = std::max(1, static_cast<int>((xhi - xlo) / 10));
  for (int n = static_cast<int>(xlo); n <= static_cast<int>(xhi); n += xstep)
    svg << "<text x=\"" << X(n) << "\" y=\"" << H - B + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << n << "</text>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">n</text>\n";

  struct Series {
    const char* name;
    const char* colour;
    BigNat FigureRow::*value;
  };
  const Series series[] = {{"NLB", "#999999", &FigureRow::nlb},
                           {"best lower", "#1f77b4", &FigureRow::best_lower},
                           {"best upper", "#d62728", &FigureRow::best_upper},
                           {"MMS floor", "#555555", &FigureRow::mms_floor}};
  double legend_y = T + 10;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i)
      svg << (i ? " " : "") << X(rows[i].n) << ',' << Y(rows[i].*s.value);
    svg << "\"/>\n";
    svg << "<line x1=\"" << L + 12 << "\" y1=\"" << legend_y << "\" x2=\"" << L + 36 << "\" y2=\"" << legend_y
        << "\" stroke=\"" << s.colour << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << L + 42 << "\" y=\"" << legend_y + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << s.name << "</text>\n";
    legend_y += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sperner
