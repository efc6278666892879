// Copyright 2026 The ownet authors
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

#include "ownet/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ownet/error.hpp"
#include "ownet/util.hpp"

namespace ownet {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parse_bool(const std::string& raw, const std::string& path,
                std::size_t line) {
  const std::string v = lower(raw);
  if (v == "1" || v == "true" || v == "t" || v == "yes") return true;
  if (v.empty() || v == "0" || v == "false" || v == "f" || v == "no")
    return false;
  throw ParseError(path + ":" + std::to_string(line) +
                   ": bad boolean value '" + raw + "'");
}

double parse_double(const std::string& raw, const std::string& path,
                    std::size_t line) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0' || errno == ERANGE)
    throw ParseError(path + ":" + std::to_string(line) + ": bad number '" +
                     raw + "'");
  return v;
}

long parse_long(const std::string& raw, const std::string& path,
                std::size_t line) {
  long v = 0;
  auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc() || p != raw.data() + raw.size())
    throw ParseError(path + ":" + std::to_string(line) + ": bad integer '" +
                     raw + "'");
  return v;
}

}  // namespace

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
        if (c == '\n') ++line;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty())
          throw ParseError(path + ":" + std::to_string(line) +
                           ": stray quote inside field");
        quoted = true;
        any = true;
        break;
      case ',':
        end_field();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty() || !row.empty()) end_row();
        any = false;
        ++line;
        break;
      default:
        field += c;
        any = true;
    }
  }
  if (quoted)
    throw ParseError(path + ": unterminated quoted field at end of file");
  if (any || !field.empty() || !row.empty()) end_row();
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<NodeRecord> read_nodes_csv(const std::string& path) {
  auto rows = read_csv(path);
  if (rows.empty()) throw ParseError(path + ": empty file, header required");
  const std::vector<std::string> expect = {"id", "country", "nace", "is_tnc",
                                           "operating_revenue"};
  if (rows[0].size() != expect.size())
    throw ParseError(path + ": bad header, expected " +
                     std::to_string(expect.size()) + " columns");
  for (std::size_t i = 0; i < expect.size(); ++i)
    if (lower(rows[0][i]) != expect[i])
      throw ParseError(path + ": bad header column '" + rows[0][i] +
                       "', expected '" + expect[i] + "'");

  std::vector<NodeRecord> out;
  out.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != expect.size())
      throw ParseError(path + ":" + std::to_string(r + 1) + ": expected " +
                       std::to_string(expect.size()) + " fields, got " +
                       std::to_string(row.size()));
    NodeRecord rec;
    rec.id = row[0];
    rec.country = row[1].empty() ? "??" : row[1];
    rec.nace = row[2].empty() ? -1 : static_cast<int>(parse_long(
                                         row[2], path, r + 1));
    rec.is_tnc = parse_bool(row[3], path, r + 1);
    if (!row[4].empty())
      rec.operating_revenue = parse_double(row[4], path, r + 1);
    out.push_back(std::move(rec));
  }
  return out;
}

void read_edges_csv(const std::string& path, GraphBuilder& builder) {
  auto rows = read_csv(path);
  if (rows.empty()) throw ParseError(path + ": empty file, header required");
  const std::vector<std::string> expect = {"source", "target", "share"};
  if (rows[0].size() != expect.size())
    throw ParseError(path + ": bad header, expected source,target,share");
  for (std::size_t i = 0; i < expect.size(); ++i)
    if (lower(rows[0][i]) != expect[i])
      throw ParseError(path + ": bad header column '" + rows[0][i] +
                       "', expected '" + expect[i] + "'");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != expect.size())
      throw ParseError(path + ":" + std::to_string(r + 1) +
                       ": expected 3 fields, got " +
                       std::to_string(row.size()));
    builder.add_edge(row[0], row[1], parse_double(row[2], path, r + 1));
  }
}

OwnershipGraph load_graph_csv(const std::string& nodes_path,
                              const std::string& edges_path,
                              const BuildOptions& opts, BuildStats* stats) {
  GraphBuilder b;
  for (auto& rec : read_nodes_csv(nodes_path)) b.add_node(std::move(rec));
  read_edges_csv(edges_path, b);
  return b.build(opts, stats);
}

void write_nodes_csv(const OwnershipGraph& g, const std::string& path) {
  std::string out = "id,country,nace,is_tnc,operating_revenue\n";
  for (const auto& rec : g.nodes()) {
    out += csv_escape(rec.id);
    out += ',';
    out += rec.country == "??" ? "" : csv_escape(rec.country);
    out += ',';
    if (rec.nace >= 0) out += std::to_string(rec.nace);
    out += ',';
    out += rec.is_tnc ? "1" : "0";
    out += ',';
    if (rec.operating_revenue) out += format_number(*rec.operating_revenue);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_edges_csv(const OwnershipGraph& g, const std::string& path) {
  std::string out = "source,target,share\n";
  for (const auto& e : g.edges()) {
    out += csv_escape(g.node(e.src).id);
    out += ',';
    out += csv_escape(g.node(e.dst).id);
    out += ',';
    out += format_number(e.share);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

}  // namespace ownet
