"""
Camera-to-object ranging by triangle similarity

P / F = W / D, with P the bounding box's vertical pixel extent, F the focal
length in pixels, W the real subject extent and D the distance, all in SI.
"""
import math

from sensing.models import CalibrationProfile
from utils.errors import InvalidArgumentError
from utils.validators import require, validate_positive

INCHES_PER_METER = 1 / 0.0254


def calibrate_focal_length(pixel_extent_px, known_distance_m, known_extent_m):
    """
    Focal length from one reference shot: F = (P x D) / W

    Args:
        pixel_extent_px (float): Box height of the reference subject
        known_distance_m (float): Measured camera-to-subject distance
        known_extent_m (float): Real height of the reference subject

    Returns:
        float: Focal length in pixels
    """
    require(validate_positive, pixel_extent_px, "pixel_extent_px")
    require(validate_positive, known_distance_m, "known_distance_m")
    require(validate_positive, known_extent_m, "known_extent_m")
    return (pixel_extent_px * known_distance_m) / known_extent_m


def estimate_distance(profile: CalibrationProfile, bbox_height_px):
    """
    Distance to a subject: D = (W x F) / P

    Args:
        profile (CalibrationProfile): Focal length and assumed extent
        bbox_height_px (float): Vertical pixel extent of the detection

    Returns:
        float: Distance in meters

    Raises:
        InvalidArgumentError: height not positive, or too small to give a finite distance
    """
    require(validate_positive, bbox_height_px, "bbox_height_px")
    distance = (profile.assumed_subject_extent_m * profile.focal_length_px) / bbox_height_px
    if not math.isfinite(distance):
        raise InvalidArgumentError("bbox_height_px", f"{bbox_height_px!r} px is too small to range")
    return distance


def estimate_subject_extent(known_distance_m, bbox_height_px, focal_length_px):
    """
    Subject height at a known distance: W = (D x P) / F

    Returns:
        float: Extent in meters
    """
    require(validate_positive, known_distance_m, "known_distance_m")
    require(validate_positive, bbox_height_px, "bbox_height_px")
    require(validate_positive, focal_length_px, "focal_length_px")
    return (known_distance_m * bbox_height_px) / focal_length_px


# ============== UNIT CONVERSION (command-line boundary only) ==============

def feet_inches_to_m(feet, inches=0.0):
    """5'4" -> 1.6256"""
    return (feet * 12 + inches) * 0.0254


def m_to_inches(meters):
    return meters * INCHES_PER_METER
