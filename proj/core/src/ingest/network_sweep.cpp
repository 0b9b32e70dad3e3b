#include "sawkit/ingest/network_sweep.hpp"

#include "sawkit/error.hpp"

#include <cctype>
#include <cmath>

namespace sawkit::ingest
{

std::string_view to_string(PortPair pair)
{
    switch(pair)
    {
    case PortPair::s11: return "s11";
    case PortPair::s21: return "s21";
    case PortPair::s12: return "s12";
    case PortPair::s22: return "s22";
    }
    return "s??";
}

std::optional<PortPair> parse_port_pair(std::string_view text)
{
    if(text.size() == 3 && (text[0] == 's' || text[0] == 'S'))
        text.remove_prefix(1);
    if(text == "11") return PortPair::s11;
    if(text == "21") return PortPair::s21;
    if(text == "12") return PortPair::s12;
    if(text == "22") return PortPair::s22;
    return std::nullopt;
}

const std::vector<std::complex<double>>& NetworkSweep::at(PortPair pair) const
{
    const auto it = s.find(pair);
    if(it == s.end())
        throw ArgumentError("sweep has no " + std::string(to_string(pair)) + " data");
    return it->second;
}

void NetworkSweep::validate() const
{
    if(freqs.empty())
        throw ArgumentError("sweep has no frequency points");
    if(s.empty())
        throw ArgumentError("sweep has no S-parameter data");
    for(std::size_t i = 0; i < freqs.size(); ++i)
    {
        if(!std::isfinite(freqs[i]))
            throw ArgumentError("sweep frequency is not finite");
        if(i > 0 && !(freqs[i] > freqs[i - 1]))
            throw ArgumentError("sweep frequencies are not strictly increasing");
    }
    for(const auto& [pair, values] : s)
        if(values.size() != freqs.size())
            throw ArgumentError(std::string(to_string(pair)) + " length differs from the frequency grid");
}

double NetworkSweep::step() const
{
    if(freqs.size() < 2)
        throw ArgumentError("frequency step needs at least two points");
    return (freqs.back() - freqs.front()) / static_cast<double>(freqs.size() - 1);
}

bool NetworkSweep::is_uniform(double relative_tolerance) const
{
    if(freqs.size() < 2)
        return false;
    const double df = step();
    for(std::size_t i = 1; i < freqs.size(); ++i)
        if(std::abs((freqs[i] - freqs[i - 1]) - df) > relative_tolerance * std::abs(df))
            return false;
    return true;
}

void SweepMeta::validate() const
{
    if(device_length_m && !(*device_length_m > 0))
        throw ArgumentError("device length must be positive");
    if(idt_pitch_m && !(*idt_pitch_m > 0))
        throw ArgumentError("IDT pitch must be positive");
}

} // namespace sawkit::ingest
