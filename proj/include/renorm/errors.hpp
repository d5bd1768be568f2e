#pragma once

#include <stdexcept>
#include <string>

namespace renorm {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input document (graph spec, scheme file, rational literal).
class parse_error : public error {
public:
  explicit parse_error(const std::string& what) : error(what) {}
};

/// A needed generator, contraction or character value is not available.
class coverage_error : public error {
public:
  explicit coverage_error(const std::string& what) : error(what) {}
};

/// A configured limit was exceeded (pole cap, vertex cap, truncation floor).
class resource_error : public error {
public:
  explicit resource_error(const std::string& what) : error(what) {}
};

/// Mathematically invalid input (non-1PI host, pole in an integrand,
/// non-holomorphic gauge character, non-equisingular family fed to beta).
class domain_error : public error {
public:
  explicit domain_error(const std::string& what) : error(what) {}
};

} // namespace renorm
