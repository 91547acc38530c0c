#pragma once

#include "deid/dicom/tag.hpp"
#include "deid/dicom/vr.hpp"

#include <optional>
#include <string_view>

namespace deid::dicom {

/// Name for well-known tags; empty when outside the dictionary. Only tags
/// the rule scripts and tests touch carry names; everything else is
/// addressed numerically.
std::string_view tag_name(Tag tag);

/// Fixed alias table used by the rule-script grammars
/// (Manufacturer, ImageType, ConversionType, ...).
std::optional<Tag> tag_for_alias(std::string_view name);

/// VR assumed when parsing implicit VR files; UN for tags outside the
/// dictionary, whose values are then preserved as opaque bytes.
Vr vr_for_tag(Tag tag);

}  // namespace deid::dicom
