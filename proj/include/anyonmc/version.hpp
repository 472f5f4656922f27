#ifndef ANYONMC_VERSION_HPP
#define ANYONMC_VERSION_HPP

namespace anyonmc {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kRngName = "xoshiro256**";

}  // namespace anyonmc

#endif
