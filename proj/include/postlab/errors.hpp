#ifndef POSTLAB_ERRORS_HPP
#define POSTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace postlab {

struct PostlabError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* A sampling constraint could not be met within the retry budget. */
struct ResamplingExhausted : PostlabError {
  explicit ResamplingExhausted(const std::string& what) : PostlabError(what) {}
};

/* A degree/multiplicity combination outside the domain of the requested count. */
struct DegreeUndefined : PostlabError {
  explicit DegreeUndefined(const std::string& what) : PostlabError(what) {}
};

/* The working prime is too small for the requested sample count. */
struct FieldTooSmall : PostlabError {
  explicit FieldTooSmall(const std::string& what) : PostlabError(what) {}
};

/* Components violate the union-position rules. */
struct InvalidUnion : PostlabError {
  explicit InvalidUnion(const std::string& what) : PostlabError(what) {}
};

/* A component meets the auxiliary surface in a forbidden way
   (tangency, containment mismatch, or no rational intersection). */
struct NonTransverse : PostlabError {
  explicit NonTransverse(const std::string& what) : PostlabError(what) {}
};

/* A witness construction could not be realized or failed its rank check. */
struct WitnessFailed : PostlabError {
  explicit WitnessFailed(const std::string& what) : PostlabError(what) {}
};

}  // namespace postlab

#endif
