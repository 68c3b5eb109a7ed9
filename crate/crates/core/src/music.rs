//! Pitch, frequency and wavelength conversions (equal temperament, A4 = 440 Hz).

use crate::error::{Error, Result};

pub const A4_FREQUENCY_HZ: f64 = 440.0;
pub const A4_PITCH: f64 = 69.0;

/// MIDI-style pitch number for `freq_hz`. Not rounded.
pub fn freq_to_pitch(freq_hz: f64) -> Result<f64> {
    if !(freq_hz > 0.0) {
        return Err(Error::param("frequency", format!("must be > 0 Hz, got {freq_hz}")));
    }
    Ok(A4_PITCH + 12.0 * (freq_hz / A4_FREQUENCY_HZ).log2())
}

pub fn pitch_to_freq(pitch: f64) -> f64 {
    A4_FREQUENCY_HZ * ((pitch - A4_PITCH) / 12.0).exp2()
}

/// Speed of sound in dry air, m/s, at `temperature_c` degrees Celsius.
pub fn speed_of_sound(temperature_c: f64) -> f64 {
    331.0 + 0.6 * temperature_c
}

/// Wavelength in metres of a tone at `freq_hz`.
pub fn wavelength(freq_hz: f64, temperature_c: f64) -> Result<f64> {
    if !(freq_hz > 0.0) {
        return Err(Error::param("frequency", format!("must be > 0 Hz, got {freq_hz}")));
    }
    let v = speed_of_sound(temperature_c);
    if !(v > 0.0) {
        return Err(Error::param(
            "temperature_c",
            format!("speed of sound {v} m/s is not positive at {temperature_c} C"),
        ));
    }
    Ok(v / freq_hz)
}
