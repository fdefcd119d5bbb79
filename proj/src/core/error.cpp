#include "hardy/error.hpp"

namespace hardy {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation: return "Validation";
        case ErrorKind::InvalidComponent: return "InvalidComponent";
        case ErrorKind::Pole: return "Pole";
        case ErrorKind::ImageIsLine: return "ImageIsLine";
        case ErrorKind::TooFewSamples: return "TooFewSamples";
        case ErrorKind::Aliasing: return "Aliasing";
        case ErrorKind::NotInLIn: return "NotInLIn";
        case ErrorKind::OutsideDomain: return "OutsideDomain";
        case ErrorKind::PointTooCloseToBoundary: return "PointTooCloseToBoundary";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::RankDeficient: return "RankDeficient";
    }
    return "Unknown";
}

bool is_numerical(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Aliasing:
        case ErrorKind::IllConditioned:
        case ErrorKind::RankDeficient:
            return true;
        default:
            return false;
    }
}

}  // namespace hardy
