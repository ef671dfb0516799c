#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace denguecast {

/// Gregorian calendar date. Only needs to be valid for the surveillance era,
/// but the arithmetic below is exact for any year of the proleptic calendar.
struct Date {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31

    auto operator<=>(const Date&) const = default;
};

/// Days since 1970-01-01 (negative before).
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t days);

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool valid_date(const Date& d);

/// ISO weekday: 1 = Monday .. 7 = Sunday.
int iso_weekday(const Date& d);

/// One ISO-8601 week. The universal time axis of the toolkit.
struct EpiWeek {
    int year = 2007;
    int week = 1; // 1..52/53

    auto operator<=>(const EpiWeek&) const = default;
};

/// Number of ISO weeks in `year` (52 or 53).
int iso_weeks_in_year(int year);

bool valid_week(const EpiWeek& w);

/// Monday of the given ISO week.
Date monday_of(const EpiWeek& w);

/// ISO week containing the given date.
EpiWeek epiweek_of(const Date& d);

EpiWeek next_week(const EpiWeek& w);
EpiWeek prev_week(const EpiWeek& w);
EpiWeek advance(const EpiWeek& w, std::int64_t n);

/// a - b in whole weeks (0 when equal).
std::int64_t week_diff(const EpiWeek& a, const EpiWeek& b);

std::string to_string(const EpiWeek& w); // "2007-W01"
std::string to_string(const Date& d);    // "2007-01-31"

/// Parse "YYYY-Www". Throws ValidationError on malformed or out-of-range input.
EpiWeek parse_epiweek(const std::string& text);

/// Parse "YYYY-MM-DD". Throws ValidationError on malformed or invalid dates.
Date parse_date(const std::string& text);

} // namespace denguecast
