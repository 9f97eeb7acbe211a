#ifndef FWM_VERSION_HPP
#define FWM_VERSION_HPP

namespace fwm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace fwm

#endif
