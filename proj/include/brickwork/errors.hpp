#ifndef BRICKWORK_ERRORS_HPP
#define BRICKWORK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace brickwork {

// Base class for every error raised by this library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

#define BRICKWORK_DEFINE_ERROR(name)                                        \
    struct name : error {                                                   \
        explicit name(const std::string& what = #name) : error(what) {}     \
    }

BRICKWORK_DEFINE_ERROR(zero_denominator_error);
BRICKWORK_DEFINE_ERROR(singular_input_error);
BRICKWORK_DEFINE_ERROR(not_admissible_error);
BRICKWORK_DEFINE_ERROR(wrong_idempotents_error);
BRICKWORK_DEFINE_ERROR(scalar_mismatch_error);
BRICKWORK_DEFINE_ERROR(zero_module_error);
BRICKWORK_DEFINE_ERROR(unsupported_characteristic_error);
BRICKWORK_DEFINE_ERROR(not_zero_cokernel_error);
BRICKWORK_DEFINE_ERROR(lift_failed_error);
BRICKWORK_DEFINE_ERROR(not_in_radical_error);
BRICKWORK_DEFINE_ERROR(outside_dh_error);
BRICKWORK_DEFINE_ERROR(non_split_denominator_error);
BRICKWORK_DEFINE_ERROR(non_split_content_error);
BRICKWORK_DEFINE_ERROR(rank_deficient_error);
BRICKWORK_DEFINE_ERROR(not_normal_error);
BRICKWORK_DEFINE_ERROR(malformed_spec_error);
BRICKWORK_DEFINE_ERROR(parse_error);

#undef BRICKWORK_DEFINE_ERROR

}  // namespace brickwork

#endif
