#pragma once

#include <stdexcept>
#include <string>

namespace restql {

/// Base class for all failures raised by the toolchain.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised while loading an input document (API-IR, OpenAPI, fixtures,
/// manifests). Carries a locator such as a JSON pointer or file path.
class IngestError : public Error {
public:
    IngestError(const std::string& message, std::string locator = "")
        : Error(locator.empty() ? message : message + " (at " + locator + ")"),
          locator_(std::move(locator)) {}

    const std::string& locator() const { return locator_; }

private:
    std::string locator_;
};

/// Syntax error in GraphQL request or SDL text, with a 1-based position.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, int line, int column)
        : Error(message + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Invalid configuration: duplicate plugin names, bad CLI/config values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The backend adapter could not be reached at all.
class TransportError : public Error {
public:
    using Error::Error;
};

} // namespace restql
