#pragma once
// remote coefficient retrieval with a local file cache (kept out of
// modform.hpp so only fetching TUs pay for the HTTP client)

#include <filesystem>
#include "httplib.h"
#include "rp/modform.hpp"

namespace rp {

inline NewformData fetch_newform(long level, long weight, const std::string& cache_dir,
                                 const std::string& endpoint, bool offline) {
  namespace fs = std::filesystem;
  fs::path cached = fs::path(cache_dir) / newform_filename(level, weight);
  if (fs::exists(cached)) return read_newform(cached.string());
  if (offline)
    throw std::runtime_error("fetch_newform: offline and not cached: " + cached.string());

  std::string base = endpoint;
  if (base.rfind("http://", 0) != 0 && base.rfind("https://", 0) != 0)
    base = "http://" + base;
  httplib::Client client(base);
  client.set_read_timeout(30, 0);
  std::string path =
      "/newform/" + std::to_string(level) + "/" + std::to_string(weight);
  auto res = client.Get(path);
  if (!res || res->status != 200)
    throw std::runtime_error("fetch_newform: GET " + base + path + " failed" +
                             (res ? " (status " + std::to_string(res->status) + ")"
                                  : " (no response)"));
  std::istringstream body(res->body);
  NewformData f = ingest_newform(body, base + path);
  if (f.level != level || f.weight != weight)
    throw std::runtime_error("fetch_newform: served form does not match request");
  fs::create_directories(cache_dir);
  write_newform(f, cached.string());
  return f;
}

}  // namespace rp
