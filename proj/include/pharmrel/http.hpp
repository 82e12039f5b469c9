#pragma once

// Binds service::handle to a cpp-httplib server.

#include <string>

#include <httplib.h>

#include "pharmrel/service.hpp"

namespace pharmrel::service {

inline void install_routes(httplib::Server& server, const Options& opts)
{
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  auto dispatch = [opts](const httplib::Request& req, httplib::Response& res) {
    const Response out = handle(req.method, req.path, req.body, opts);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get("/healthz", dispatch);
  server.Get("/api/v1/.*", dispatch);
  server.Post("/api/v1/.*", dispatch);
  server.Options("/.*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

/// Serves `static_dir` (the dashboard bundle) at "/" when non-empty.
inline bool mount_static(httplib::Server& server, const std::string& static_dir)
{
  if (static_dir.empty()) return true;
  return server.set_mount_point("/", static_dir);
}

}  // namespace pharmrel::service
