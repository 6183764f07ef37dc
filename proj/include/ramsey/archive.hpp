#pragma once

// Published-archive ingestion: download a graph6 archive (file:// or http://),
// validate every line with the oracle, normalize to the canonical class list,
// and cache atomically. The cache file appears only after everything passes.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/graph.hpp"
#include "ramsey/iso.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/set.hpp"

#if __has_include(<httplib.h>)
#define RAMSEY_HAS_HTTPLIB 1
#include <httplib.h>
#endif

namespace ramsey {

struct ArchiveInfo {
  RamseyParams params;
  int order = 0;
  std::size_t expected_classes = 0;  // after normalization
  const char* cache_name = "";
};

inline const std::vector<ArchiveInfo>& known_archives() {
  static const std::vector<ArchiveInfo> table = {
      {{4, 6}, 35, 37, "r46_35.g6"},
      {{5, 5}, 42, 656, "r55_42.g6"},
  };
  return table;
}

inline const ArchiveInfo* find_archive(RamseyParams p) {
  for (const ArchiveInfo& a : known_archives())
    if (a.params == p) return &a;
  return nullptr;
}

// exit_code follows the CLI table: 4 = network failure, 5 = count/validation
// mismatch in the downloaded data.
struct FetchError : std::runtime_error {
  int exit_code;
  FetchError(int code, const std::string& msg)
      : std::runtime_error(msg), exit_code(code) {}
};

inline std::string download_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw std::invalid_argument("bad archive URL (expected file:// or http://): " + url);
  std::string scheme = url.substr(0, scheme_end);
  std::string rest = url.substr(scheme_end + 3);

  if (scheme == "file") {
    std::ifstream in(rest, std::ios::binary);
    if (!in) throw FetchError(4, url + ": cannot open");
    std::ostringstream body;
    body << in.rdbuf();
    if (!in && !in.eof()) throw FetchError(4, url + ": read failed");
    return std::move(body).str();
  }

  if (scheme == "http") {
#ifdef RAMSEY_HAS_HTTPLIB
    std::string hostport = rest.substr(0, rest.find('/'));
    std::string path = rest.substr(hostport.size());
    if (path.empty()) path = "/";
    std::string host = hostport;
    int port = 80;
    if (auto colon = hostport.rfind(':'); colon != std::string::npos) {
      host = hostport.substr(0, colon);
      try {
        port = std::stoi(hostport.substr(colon + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad port in archive URL: " + url);
      }
    }
    if (host.empty()) throw std::invalid_argument("missing host in archive URL: " + url);
    httplib::Client client(host, port);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    auto res = client.Get(path);
    if (!res) throw FetchError(4, url + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw FetchError(4, url + ": HTTP " + std::to_string(res->status));
    return res->body;
#else
    throw FetchError(4, "built without http support; use a file:// URL");
#endif
  }

  throw std::invalid_argument("unsupported URL scheme \"" + scheme +
                              "\" (expected file:// or http://): " + url);
}

struct FetchResult {
  ArchiveInfo info;
  std::vector<std::string> raw_lines;  // downloaded file, one graph per line
  std::vector<Graph> graphs;           // normalized: closed under complement
                                       // when s = t, deduplicated, sorted
  std::filesystem::path cached_path;
};

// The published s = t archives keep one graph per complement pair; complement
// closure restores the full class list before the expected-count check.
inline FetchResult fetch_archive(RamseyParams p, const std::string& url,
                                 const std::filesystem::path& cache_dir) {
  p.validate();
  const ArchiveInfo* info = find_archive(p);
  if (!info) {
    std::string known;
    for (const ArchiveInfo& a : known_archives())
      known += " (" + std::to_string(a.params.s) + "," + std::to_string(a.params.t) + ")";
    throw std::invalid_argument("no known archive for (s,t)=(" + std::to_string(p.s) +
                                "," + std::to_string(p.t) + "); known:" + known);
  }

  FetchResult result;
  result.info = *info;

  std::istringstream in(download_url(url));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      Graph g = graph6_decode(line);
      if (g.n != info->order)
        throw FetchError(5, "line " + std::to_string(lineno) + " (" + line + "): order " +
                             std::to_string(g.n) + ", archive expects " +
                             std::to_string(info->order));
      if (!is_counterexample(g, p))
        throw FetchError(5, "line " + std::to_string(lineno) + " (" + line +
                             "): fails the clique/independent-set check");
      result.graphs.push_back(std::move(g));
    } catch (const ParseError& e) {
      throw FetchError(5, "line " + std::to_string(lineno) + ": " + e.what());
    }
    result.raw_lines.push_back(line);
  }

  if (p.s == p.t) {
    std::size_t base = result.graphs.size();
    result.graphs.reserve(2 * base);
    for (std::size_t i = 0; i < base; ++i)
      result.graphs.push_back(complement(result.graphs[i]));
  }
  result.graphs = dedup_up_to_iso(sorted_by_graph6(std::move(result.graphs)));
  if (result.graphs.size() != info->expected_classes)
    throw FetchError(5, url + ": expected " + std::to_string(info->expected_classes) +
                         " classes after normalization, got " +
                         std::to_string(result.graphs.size()));

  std::filesystem::create_directories(cache_dir);
  std::filesystem::path final_path = cache_dir / info->cache_name;
  std::filesystem::path tmp_path = final_path;
  tmp_path += ".tmp";
  write_graph6_file(tmp_path.string(), result.graphs);
  std::filesystem::rename(tmp_path, final_path);
  result.cached_path = final_path;
  return result;
}

}  // namespace ramsey
