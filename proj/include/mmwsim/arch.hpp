#pragma once

#include <array>
#include <string>

namespace mmwsim {

// The six transceiver architectures under comparison.
enum class Architecture {
    cm_fd,    // channel-matched, fully digital
    pzf_fd,   // partial zero-forcing, fully digital
    pzf_hy,   // hybrid (phase-shifter RF stage + small digital baseband)
    an,       // fully analog beam steering along dominant paths
    sw_phsh,  // switches + fixed quantized phase shifters
    sw,       // pure antenna selection via switches
};

inline constexpr std::array<Architecture, 6> kAllArchitectures = {
    Architecture::cm_fd,  Architecture::pzf_fd,  Architecture::pzf_hy,
    Architecture::an,     Architecture::sw_phsh, Architecture::sw,
};

// Stable tag strings used in configuration files, the CLI and CSV output.
const char* to_string(Architecture a);

// Parses a tag string; throws ConfigError on an unknown tag.
Architecture architecture_from_string(const std::string& tag);

}  // namespace mmwsim
