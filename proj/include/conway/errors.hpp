#pragma once

#include <stdexcept>
#include <string>

namespace conway {

enum class ErrorCode {
    duplicate_vertex,
    loop_edge,
    duplicate_edge,
    unknown_endpoint,
    unknown_vertex,
    unknown_edge,
    empty_graph,
    enumeration_budget_exceeded,
    composition_mismatch,
    invalid_poset,
    unknown_element,
    not_w_homomorphism,
    malformed_collection,
    not_continuous_injection,
    not_morphism_at_level,
    invalid_partition,
    length_mismatch,
    parse_error,
    schema_error,
    validation_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace conway
