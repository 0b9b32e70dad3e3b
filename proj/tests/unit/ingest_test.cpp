#include "sawkit/error.hpp"
#include "sawkit/ingest/csv_sweep.hpp"
#include "sawkit/ingest/touchstone.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sawkit;
using namespace sawkit::ingest;
using cd = std::complex<double>;

namespace
{

NetworkSweep random_sweep(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 0.3);
    NetworkSweep s;
    for(std::size_t i = 0; i < n; ++i)
        s.freqs.push_back(3.5e9 + 1.234567e6 * static_cast<double>(i));
    for(auto p : {PortPair::s11, PortPair::s21, PortPair::s12, PortPair::s22})
        for(std::size_t i = 0; i < n; ++i)
            s.s[p].push_back({g(rng), g(rng)});
    return s;
}

void expect_close(const NetworkSweep& a, const NetworkSweep& b, double tol)
{
    ASSERT_EQ(a.freqs.size(), b.freqs.size());
    for(std::size_t i = 0; i < a.freqs.size(); ++i)
        EXPECT_NEAR(a.freqs[i], b.freqs[i], tol * a.freqs[i]);
    for(const auto& [pair, v] : a.s)
    {
        ASSERT_TRUE(b.has(pair));
        for(std::size_t i = 0; i < v.size(); ++i)
            EXPECT_NEAR(std::abs(v[i] - b.at(pair)[i]), 0, tol);
    }
}

} // namespace

TEST(Touchstone, SingleRiRow)
{
    const auto s = parse_touchstone("# GHZ S RI R 50\n3.8 0.5 0 0.1 0 0.1 0 0.5 0\n");
    ASSERT_EQ(s.freqs.size(), 1u);
    EXPECT_DOUBLE_EQ(s.freqs[0], 3.8e9);
    EXPECT_EQ(s.at(PortPair::s21)[0], cd(0.1, 0));
    EXPECT_EQ(s.at(PortPair::s11)[0], cd(0.5, 0));
    EXPECT_DOUBLE_EQ(s.ref_impedance, 50);
}

TEST(Touchstone, MaQuarterTurn)
{
    const auto s = parse_touchstone("! comment\n# MHZ S MA R 50\n3800 0 0 1 90 0 0 0 0\n");
    EXPECT_DOUBLE_EQ(s.freqs[0], 3.8e9);
    EXPECT_NEAR(s.at(PortPair::s21)[0].real(), 0, 1e-12);
    EXPECT_NEAR(s.at(PortPair::s21)[0].imag(), 1, 1e-12);
}

TEST(Touchstone, DbMagnitude)
{
    const auto s = parse_touchstone("# HZ S DB R 50\n3.8e9 0 0 -10.7 0 0 0 0 0\n");
    EXPECT_NEAR(std::abs(s.at(PortPair::s21)[0]), 0.2917427, 1e-7);
}

TEST(Touchstone, DefaultsWhenOptionTokensMissing)
{
    const auto s = parse_touchstone("#\n1 1 0 1 0 1 0 1 0\n");
    EXPECT_DOUBLE_EQ(s.freqs[0], 1e9);  // GHz default
    EXPECT_NEAR(s.at(PortPair::s21)[0].real(), 1, 1e-15);  // MA default
}

TEST(Touchstone, StructuredErrors)
{
    const auto line_of = [](const char* text) -> std::size_t {
        try
        {
            parse_touchstone(text);
        }
        catch(const FormatError& e)
        {
            return e.line() == 0 ? 1000 : e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("1 0 0 0 0 0 0 0 0\n"), 1u);                                 // data before options
    EXPECT_NE(line_of("! only a comment\n"), 0u);                                 // no option line
    EXPECT_EQ(line_of("# GHZ S RI R 50\n1 0 0 0 0 0 0 0\n"), 2u);                 // eight columns
    EXPECT_EQ(line_of("# GHZ S RI R 50\n2 0 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0 0\n"), 3u);  // decreasing
    EXPECT_EQ(line_of("# GHZ S RI R 50\n1 0 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0 0\n"), 3u);  // duplicate
    EXPECT_EQ(line_of("# GHZ Y RI R 50\n1 0 0 0 0 0 0 0 0\n"), 1u);               // Y parameters
    EXPECT_EQ(line_of("[Version] 2.0\n# GHZ S RI R 50\n"), 1u);                   // v2 keyword
    EXPECT_EQ(line_of("# GHZ S RI R 50\n1 0 x 0 0 0 0 0 0\n"), 2u);               // bad number
    EXPECT_NE(line_of("# GHZ S RI R 50\n"), 0u);                                  // no data
}

TEST(Touchstone, RoundTripAllFormats)
{
    const auto s = random_sweep(16, 5);
    for(auto fmt : {TouchstoneFormat::ri, TouchstoneFormat::ma, TouchstoneFormat::db})
        for(auto unit : {FrequencyUnit::hz, FrequencyUnit::mhz, FrequencyUnit::ghz})
        {
            TouchstoneWriteOptions opt;
            opt.format = fmt;
            opt.unit = unit;
            expect_close(s, parse_touchstone(write_touchstone(s, opt)), 1e-12);
        }
}

TEST(Touchstone, RiRoundTripIsExact)
{
    const auto s = random_sweep(32, 6);
    const auto back = parse_touchstone(write_touchstone(s));
    EXPECT_EQ(back.freqs, s.freqs);
    EXPECT_EQ(back.s, s.s);
}

TEST(Touchstone, MetaComments)
{
    SweepMeta meta;
    meta.temperature_k = 5;
    meta.device_length_m = 50e-6;
    meta.idt_pitch_m = 1.7e-6;
    meta.notes = "cavity";
    TouchstoneWriteOptions opt;
    opt.meta = &meta;
    const auto text = write_touchstone(random_sweep(4, 7), opt);
    const auto back = parse_touchstone_meta(text);
    EXPECT_EQ(back.temperature_k, 5);
    EXPECT_EQ(back.device_length_m, 50e-6);
    EXPECT_EQ(back.idt_pitch_m, 1.7e-6);
    EXPECT_EQ(back.notes, "cavity");
}

TEST(Touchstone, MissingPairsWrittenAsZero)
{
    NetworkSweep s;
    s.freqs = {1e9, 2e9};
    s.s[PortPair::s21] = {cd(0.1, 0.2), cd(0.3, 0.4)};
    const auto back = parse_touchstone(write_touchstone(s));
    EXPECT_EQ(back.at(PortPair::s21), s.at(PortPair::s21));
    EXPECT_EQ(back.at(PortPair::s11)[1], cd(0, 0));
}

TEST(Touchstone, FuzzYieldsSweepOrStructuredError)
{
    std::mt19937_64 rng(8);
    const std::string alphabet = "0123456789.-+eE #!SRIMADBGHZKhz\n\t,[]xyz";
    const std::string seed_text = "# GHZ S RI R 50\n3.8 0.5 0 0.1 0 0.1 0 0.5 0\n3.9 0.5 0 0.1 0 0.1 0 0.5 0\n";
    for(int trial = 0; trial < 3000; ++trial)
    {
        std::string text = seed_text;
        const int edits = 1 + static_cast<int>(rng() % 8);
        for(int e = 0; e < edits; ++e)
        {
            const std::size_t pos = rng() % (text.size() + 1);
            const char c = alphabet[rng() % alphabet.size()];
            switch(rng() % 3)
            {
            case 0: text.insert(pos, 1, c); break;
            case 1: if(pos < text.size()) text.erase(pos, 1); break;
            default: if(pos < text.size()) text[pos] = c;
            }
        }
        if(trial % 5 == 0)
            for(auto& ch : text)
                if(rng() % 7 == 0)
                    ch = static_cast<char>(rng() % 256);
        try
        {
            const auto s = parse_touchstone(text);
            EXPECT_NO_THROW(s.validate());
        }
        catch(const FormatError&)
        {
        }
    }
}

TEST(Csv, SimpleRi)
{
    const auto s = parse_csv_sweep("freq_hz,s21_re,s21_im\n3.8e9,0.1,0\n");
    EXPECT_EQ(s.at(PortPair::s21)[0], cd(0.1, 0));
    EXPECT_FALSE(s.has(PortPair::s11));
}

TEST(Csv, DbPhaseMatchesTouchstoneDb)
{
    const auto a = parse_csv_sweep("freq_hz,s21_db,s21_deg\n3.8e9,-10.7,33\n");
    const auto b = parse_touchstone("# HZ S DB R 50\n3.8e9 0 0 -10.7 33 0 0 0 0\n");
    EXPECT_NEAR(std::abs(a.at(PortPair::s21)[0] - b.at(PortPair::s21)[0]), 0, 1e-15);
}

TEST(Csv, Errors)
{
    EXPECT_THROW(parse_csv_sweep(""), FormatError);
    try
    {
        parse_csv_sweep("frequency,s21_re,s21_im\n1,0,0\n");
        FAIL();
    }
    catch(const FormatError& e)
    {
        EXPECT_NE(std::string(e.what()).find("frequency"), std::string::npos);
    }
    EXPECT_THROW(parse_csv_sweep("freq_hz,s21_re,s21_im\n1,0\n"), FormatError);
    EXPECT_THROW(parse_csv_sweep("freq_hz,s21_re,s21_im\n2,0,0\n1,0,0\n"), FormatError);
    EXPECT_THROW(parse_csv_sweep("freq_hz,s21_re,s21_im\n1,a,0\n"), FormatError);
}

TEST(Csv, CustomColumns)
{
    CsvColumnSpec spec;
    spec.frequency = "f_ghz";
    spec.frequency_scale = 1e9;
    spec.pairs = {{PortPair::s11, CsvRepresentation::ri, "re", "im"}};
    const auto s = parse_csv_sweep("f_ghz,re,im\n3.8,0.2,-0.1\n", spec);
    EXPECT_DOUBLE_EQ(s.freqs[0], 3.8e9);
    EXPECT_EQ(s.at(PortPair::s11)[0], cd(0.2, -0.1));
}

TEST(Csv, RoundTripBitForBit)
{
    const auto s = random_sweep(16, 9);
    const PortPair all[] = {PortPair::s11, PortPair::s21, PortPair::s12, PortPair::s22};
    const auto back = parse_csv_sweep(write_csv(s, all, CsvRepresentation::ri));
    EXPECT_EQ(back.freqs, s.freqs);
    EXPECT_EQ(back.s, s.s);
    const auto polar = parse_csv_sweep(write_csv(s, all, CsvRepresentation::db_phase));
    expect_close(s, polar, 1e-12);
}

TEST(Csv, WriteErrors)
{
    const auto s = random_sweep(4, 10);
    EXPECT_THROW(write_csv(s, {}, CsvRepresentation::ri), ArgumentError);
    NetworkSweep only21;
    only21.freqs = {1};
    only21.s[PortPair::s21] = {1.0};
    const PortPair want[] = {PortPair::s11};
    EXPECT_THROW(write_csv(only21, want, CsvRepresentation::ri), ArgumentError);
}

TEST(NetworkSweep, Invariants)
{
    NetworkSweep s;
    EXPECT_THROW(s.validate(), ArgumentError);
    s.freqs = {1, 2, 3};
    EXPECT_THROW(s.validate(), ArgumentError);
    s.s[PortPair::s21] = {1.0, 1.0};
    EXPECT_THROW(s.validate(), ArgumentError);
    s.s[PortPair::s21].push_back(1.0);
    EXPECT_NO_THROW(s.validate());
    EXPECT_TRUE(s.is_uniform());
    s.freqs = {1, 2, 3.1};
    EXPECT_FALSE(s.is_uniform());
    EXPECT_THROW(s.at(PortPair::s11), ArgumentError);
    EXPECT_EQ(parse_port_pair("S21"), PortPair::s21);
    EXPECT_EQ(parse_port_pair("12"), PortPair::s12);
    EXPECT_FALSE(parse_port_pair("s33"));
}
