#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace deid::dicom {

/// Two-letter value representation code.
class Vr {
public:
    constexpr Vr() = default;
    constexpr Vr(char a, char b) : a_(a), b_(b) {}

    constexpr bool operator==(const Vr&) const = default;
    constexpr auto operator<=>(const Vr&) const = default;

    std::string str() const { return std::string{a_, b_}; }
    constexpr char first() const { return a_; }
    constexpr char second() const { return b_; }

    /// True for VRs written with a 2-byte reserved field and a 32-bit
    /// length in explicit VR encoding.
    bool has_long_length() const;

    /// True for members of the standard VR set.
    bool known() const;

    /// True for text VRs whose values pad with trailing space.
    bool is_string() const;

    static std::optional<Vr> parse(std::string_view s);

private:
    char a_ = 'U';
    char b_ = 'N';
};

namespace vr {
inline constexpr Vr AE{'A', 'E'};
inline constexpr Vr AS{'A', 'S'};
inline constexpr Vr AT{'A', 'T'};
inline constexpr Vr CS{'C', 'S'};
inline constexpr Vr DA{'D', 'A'};
inline constexpr Vr DS{'D', 'S'};
inline constexpr Vr DT{'D', 'T'};
inline constexpr Vr FL{'F', 'L'};
inline constexpr Vr FD{'F', 'D'};
inline constexpr Vr IS{'I', 'S'};
inline constexpr Vr LO{'L', 'O'};
inline constexpr Vr LT{'L', 'T'};
inline constexpr Vr OB{'O', 'B'};
inline constexpr Vr OD{'O', 'D'};
inline constexpr Vr OF{'O', 'F'};
inline constexpr Vr OL{'O', 'L'};
inline constexpr Vr OW{'O', 'W'};
inline constexpr Vr PN{'P', 'N'};
inline constexpr Vr SH{'S', 'H'};
inline constexpr Vr SL{'S', 'L'};
inline constexpr Vr SQ{'S', 'Q'};
inline constexpr Vr SS{'S', 'S'};
inline constexpr Vr ST{'S', 'T'};
inline constexpr Vr TM{'T', 'M'};
inline constexpr Vr UC{'U', 'C'};
inline constexpr Vr UI{'U', 'I'};
inline constexpr Vr UL{'U', 'L'};
inline constexpr Vr UN{'U', 'N'};
inline constexpr Vr UR{'U', 'R'};
inline constexpr Vr US{'U', 'S'};
inline constexpr Vr UT{'U', 'T'};
}  // namespace vr

}  // namespace deid::dicom
