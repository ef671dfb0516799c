#include "denguecast/epiweek.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "denguecast/error.hpp"

namespace denguecast {

// Howard Hinnant's civil calendar algorithms.
std::int64_t days_from_civil(const Date& d) {
    std::int64_t y = d.year;
    const int m = d.month;
    const int day = d.day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned day = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(day)};
}

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[static_cast<std::size_t>(month - 1)];
}

bool valid_date(const Date& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

int iso_weekday(const Date& d) {
    // 1970-01-01 was a Thursday (ISO 4).
    const std::int64_t days = days_from_civil(d);
    return static_cast<int>(((days + 3) % 7 + 7) % 7) + 1;
}

int iso_weeks_in_year(int year) {
    // December 28 always falls in the last ISO week of its year.
    return epiweek_of(Date{year, 12, 28}).week;
}

bool valid_week(const EpiWeek& w) {
    return w.week >= 1 && w.week <= iso_weeks_in_year(w.year);
}

Date monday_of(const EpiWeek& w) {
    // January 4 always lies in week 1.
    const Date jan4{w.year, 1, 4};
    const std::int64_t monday_w1 = days_from_civil(jan4) - (iso_weekday(jan4) - 1);
    return civil_from_days(monday_w1 + 7 * static_cast<std::int64_t>(w.week - 1));
}

EpiWeek epiweek_of(const Date& d) {
    // The Thursday of a date's week determines both ISO year and week number.
    const std::int64_t thursday = days_from_civil(d) + (4 - iso_weekday(d));
    const Date t = civil_from_days(thursday);
    const std::int64_t jan1 = days_from_civil(Date{t.year, 1, 1});
    const int ordinal = static_cast<int>(thursday - jan1) + 1;
    return EpiWeek{t.year, (ordinal - 1) / 7 + 1};
}

namespace {
std::int64_t abs_week_index(const EpiWeek& w) {
    // Mondays are congruent to 4 modulo 7 in days-since-epoch, so this division is exact.
    return (days_from_civil(monday_of(w)) - 4) / 7;
}
} // namespace

EpiWeek advance(const EpiWeek& w, std::int64_t n) {
    const std::int64_t days = days_from_civil(monday_of(w)) + 7 * n;
    return epiweek_of(civil_from_days(days));
}

EpiWeek next_week(const EpiWeek& w) { return advance(w, 1); }
EpiWeek prev_week(const EpiWeek& w) { return advance(w, -1); }

std::int64_t week_diff(const EpiWeek& a, const EpiWeek& b) {
    return abs_week_index(a) - abs_week_index(b);
}

std::string to_string(const EpiWeek& w) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-W%02d", w.year, w.week);
    return buf;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

namespace {
bool parse_int(const char* first, const char* last, int& out) {
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}
} // namespace

EpiWeek parse_epiweek(const std::string& text) {
    // Strict "YYYY-Www" form.
    if (text.size() != 8 || text[4] != '-' || text[5] != 'W')
        throw ValidationError("malformed week string '" + text + "' (expected YYYY-Www)");
    EpiWeek w;
    if (!parse_int(text.data(), text.data() + 4, w.year) ||
        !parse_int(text.data() + 6, text.data() + 8, w.week))
        throw ValidationError("malformed week string '" + text + "' (expected YYYY-Www)");
    if (!valid_week(w))
        throw ValidationError("week out of range: '" + text + "' (year " + std::to_string(w.year) +
                              " has " + std::to_string(iso_weeks_in_year(w.year)) + " weeks)");
    return w;
}

Date parse_date(const std::string& text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw ValidationError("malformed date '" + text + "' (expected YYYY-MM-DD)");
    Date d;
    if (!parse_int(text.data(), text.data() + 4, d.year) ||
        !parse_int(text.data() + 5, text.data() + 7, d.month) ||
        !parse_int(text.data() + 8, text.data() + 10, d.day))
        throw ValidationError("malformed date '" + text + "' (expected YYYY-MM-DD)");
    if (!valid_date(d)) throw ValidationError("invalid calendar date '" + text + "'");
    return d;
}

} // namespace denguecast
