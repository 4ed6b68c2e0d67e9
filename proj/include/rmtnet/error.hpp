#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmtnet {

// Base of every library error. `category()` drives the CLI exit code.
class error : public std::runtime_error {
public:
    enum class category { config, numerical, io };

    explicit error(const std::string& what, category cat = category::numerical)
        : std::runtime_error(what), cat_(cat) {}

    category kind() const noexcept { return cat_; }

private:
    category cat_;
};

// ---- configuration / input-shape errors -----------------------------------

struct invalid_dimension : error {
    explicit invalid_dimension(const std::string& w) : error("invalid dimension: " + w, category::config) {}
};

struct invalid_spec : error {
    explicit invalid_spec(const std::string& w) : error("invalid spec: " + w, category::config) {}
};

struct invalid_parameter : error {
    explicit invalid_parameter(const std::string& w) : error("invalid parameter: " + w, category::config) {}
};

struct config_error : error {
    explicit config_error(const std::string& w) : error("config error: " + w, category::config) {}
};

struct parse_error : error {
    parse_error(std::size_t line, const std::string& w)
        : error("parse error at line " + std::to_string(line) + ": " + w, category::config), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct empty_network : error {
    explicit empty_network(const std::string& w) : error("empty network: " + w, category::config) {}
};

// ---- numerical errors ------------------------------------------------------

struct empty_input : error {
    explicit empty_input(const std::string& w) : error("empty input: " + w) {}
};

struct insufficient_levels : error {
    explicit insufficient_levels(const std::string& w) : error("insufficient levels: " + w) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& w) : error("domain error: " + w) {}
};

struct numerical_error : error {
    explicit numerical_error(const std::string& w) : error("numerical error: " + w) {}
};

struct fit_error : error {
    explicit fit_error(const std::string& w) : error("fit error: " + w) {}
};

struct monotonicity_error : error {
    monotonicity_error(double lo, double hi, const std::string& w)
        : error("monotonicity error: " + w), lo_(lo), hi_(hi) {}
    // Subinterval of E over which the fitted staircase is not increasing.
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_, hi_;
};

struct unfolding_quality_error : error {
    explicit unfolding_quality_error(const std::string& w) : error("unfolding quality: " + w) {}
};

struct interval_too_long : error {
    explicit interval_too_long(const std::string& w) : error("interval too long: " + w) {}
};

struct alignment_error : error {
    explicit alignment_error(const std::string& w) : error("alignment error: " + w) {}
};

// ---- I/O -------------------------------------------------------------------

struct io_error : error {
    explicit io_error(const std::string& w) : error("i/o error: " + w, category::io) {}
};

}  // namespace rmtnet
