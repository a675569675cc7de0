#ifndef HYPERIPS_ERRORS_HPP
#define HYPERIPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperips {

// Every recoverable failure in the library throws Error with one of these
// codes.  The CLI maps resource-cap codes to exit 3 and everything else to
// exit 2 (0 = success).
enum class Errc {
    DuplicateRule,
    MalformedRule,
    StateNotInSpace,
    OrderTooHigh,
    StepUnderflow,
    SimplexViolation,
    ParameterDomain,
    InfeasibleRegular,
    EmptyGraph,
    NegativeRate,
    TooLarge,
    StateSpaceTooLarge,
    EmptySubset,
    MotifTooLarge,
    RequiresSymmetric,
    RequiresUnweighted,
    SpecInvalid,
    CapExceeded,
    IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code),
          raw_(what) {}
    Errc code() const { return code_; }
    const std::string& raw() const { return raw_; } // message without the code prefix

    // true for failures caused by a resource cap rather than bad input
    bool is_cap() const {
        return code_ == Errc::CapExceeded || code_ == Errc::StateSpaceTooLarge ||
               code_ == Errc::TooLarge || code_ == Errc::MotifTooLarge;
    }

  private:
    Errc code_;
    std::string raw_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace hyperips

#endif
