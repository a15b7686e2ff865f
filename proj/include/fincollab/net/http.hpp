#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fincollab::net {

using Headers = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
  int status = 0;
  std::string body;
  /// Set when no HTTP response was received (DNS, connect, TLS, timeout).
  std::optional<std::string> transport_error;

  [[nodiscard]] bool ok() const { return !transport_error && status >= 200 && status < 300; }
};

/// Splits "https://host:port/some/prefix" into origin and path.
struct Url {
  std::string origin;
  std::string path;
};

/// Throws Error{InvalidArgument} for anything other than http(s)://host[...].
Url parse_url(std::string_view url);

/// URL-encodes a query component.
std::string encode_query(std::string_view text);

HttpResponse post(const std::string &url, const std::string &body, const std::string &content_type,
                  const Headers &headers, std::chrono::seconds timeout);
HttpResponse get(const std::string &url, const Headers &headers, std::chrono::seconds timeout);

}  // namespace fincollab::net
