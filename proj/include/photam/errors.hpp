#ifndef PHOTAM_ERRORS_HPP
#define PHOTAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace photam {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define PHOTAM_DEFINE_ERROR(Name)                  \
  struct Name : Error {                            \
    explicit Name(const std::string& msg = #Name)  \
        : Error(std::string(#Name) + ": " + msg) {} \
  }

PHOTAM_DEFINE_ERROR(NonHermitianInput);
PHOTAM_DEFINE_ERROR(NonAntiHermitianInput);
PHOTAM_DEFINE_ERROR(PolarSingularity);
PHOTAM_DEFINE_ERROR(ZeroMomentum);
PHOTAM_DEFINE_ERROR(NonUnitAxis);
PHOTAM_DEFINE_ERROR(InvalidWindow);
PHOTAM_DEFINE_ERROR(TooFewNodes);
PHOTAM_DEFINE_ERROR(WindowTooNarrow);
PHOTAM_DEFINE_ERROR(GridMismatch);
PHOTAM_DEFINE_ERROR(NotNormalized);
PHOTAM_DEFINE_ERROR(BandLimitExceeded);
PHOTAM_DEFINE_ERROR(UnphysicalLeakage);
PHOTAM_DEFINE_ERROR(BadBins);
PHOTAM_DEFINE_ERROR(LabelAssignmentAmbiguous);
PHOTAM_DEFINE_ERROR(NonPositiveA);
PHOTAM_DEFINE_ERROR(FormatError);
PHOTAM_DEFINE_ERROR(IoError);
PHOTAM_DEFINE_ERROR(ConfigError);

#undef PHOTAM_DEFINE_ERROR

}  // namespace photam

#endif
