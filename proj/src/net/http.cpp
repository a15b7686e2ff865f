#include "fincollab/net/http.hpp"

#include "fincollab/core/error.hpp"

#include "httplib.h"

#include <cctype>
#include <cstdio>

namespace fincollab::net {

namespace {

httplib::Headers to_httplib(const Headers &headers) {
  httplib::Headers out;
  for (const auto &[k, v] : headers) {
    out.emplace(k, v);
  }
  return out;
}

HttpResponse convert(const httplib::Result &result) {
  HttpResponse response;
  if (!result) {
    response.transport_error = httplib::to_string(result.error());
    return response;
  }
  response.status = result->status;
  response.body = result->body;
  return response;
}

httplib::Client make_client(const Url &url, std::chrono::seconds timeout) {
  httplib::Client client(url.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_follow_location(true);
  return client;
}

}  // namespace

Url parse_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "URL without scheme: " + std::string(url));
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::InvalidArgument, "unsupported URL scheme: " + std::string(url));
  }
  const auto host_start = scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  Url out;
  out.origin = std::string(url.substr(0, path_start));
  if (out.origin.size() == host_start) {
    throw Error(ErrorCode::InvalidArgument, "URL without host: " + std::string(url));
  }
  out.path = path_start == std::string_view::npos ? std::string{} : std::string(url.substr(path_start));
  while (!out.path.empty() && out.path.back() == '/') {
    out.path.pop_back();
  }
  return out;
}

std::string encode_query(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof(buf), "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

HttpResponse post(const std::string &url, const std::string &body, const std::string &content_type,
                  const Headers &headers, std::chrono::seconds timeout) {
  const auto parsed = parse_url(url);
  auto client = make_client(parsed, timeout);
  return convert(client.Post(parsed.path.empty() ? "/" : parsed.path, to_httplib(headers), body, content_type));
}

HttpResponse get(const std::string &url, const Headers &headers, std::chrono::seconds timeout) {
  const auto parsed = parse_url(url);
  auto client = make_client(parsed, timeout);
  return convert(client.Get(parsed.path.empty() ? "/" : parsed.path, to_httplib(headers)));
}

}  // namespace fincollab::net
