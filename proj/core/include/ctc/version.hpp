#ifndef CTC_VERSION_HPP
#define CTC_VERSION_HPP

namespace ctc {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
