#ifndef SHADOWLAB_VERSION_HPP
#define SHADOWLAB_VERSION_HPP

namespace shadowlab {

inline constexpr const char* kVersion = "shadowlab 0.1.0";

} // namespace shadowlab

#endif
