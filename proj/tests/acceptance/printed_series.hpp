#pragma once

// Coefficients of g^0 .. g^8 as printed in the reference tables.
// A term is rat + surd * sqrt(D), or rat + surd / sqrt(D) when `inverse`.

#include <array>
#include <string>
#include <vector>

namespace acceptance {

struct Term {
  const char* rat;
  const char* surd = "0";
  bool inverse = false;
};

struct PrintedBranch {
  std::vector<std::string> labels;  // more than one when printed as equal
  long radicand = 0;
  std::array<Term, 5> terms;
};

inline const std::vector<PrintedBranch>& printed_cubic() {
  static const std::vector<PrintedBranch> table{
      {{"E00"}, 0, {{{"2"}, {"5/48"}, {"-223/6912"}, {"114407/4976640"}, {"-346266143/14332723200"}}}},
      {{"E10"}, 0, {{{"4"}, {"11/16"}, {"-869/2304"}, {"737419/1658880"}, {"-3486539861/4777574400"}}}},
      {{"E11"}, 0, {{{"4"}, {"13/48"}, {"-1519/6912"}, {"1535767/4976640"}, {"-7858558079/14332723200"}}}},
      {{"E20"},
       41,
       {{{"6"},
         {"17/16", "1/8"},
         {"-329/384", "-3407/768", true},
         {"417793/276480", "63502133/7557120", true},
         {"-952249153/265420800", "-18548037835009/892344729600", true}}}},
      {{"E21"}, 0, {{{"6"}, {"19/16"}, {"-1063/768"}, {"1606697/552960"}, {"-4024837709/530841600"}}}},
      {{"E22"},
       41,
       {{{"6"},
         {"17/16", "-1/8"},
         {"-329/384", "3407/768", true},
         {"417793/276480", "-63502133/7557120", true},
         {"-952249153/265420800", "18548037835009/892344729600", true}}}},
      {{"E30"},
       721,
       {{{"8"},
         {"115/48", "1/24"},
         {"-9205/3456", "-260275/6912", true},
         {"3128263/497664", "77128555369/717631488", true},
         {"-28693057087/1433272320", "-576524526420731587/1490147432202240", true}}}},
      {{"E31"},
       0,
       {{{"8"}, {"137/48"}, {"-888811/214272"}, {"1766794711427/148259082240"}, {"-16887386781611073971/410333696734003200"}}}},
      {{"E32"},
       721,
       {{{"8"},
         {"115/48", "-1/24"},
         {"-9205/3456", "260275/6912", true},
         {"3128263/497664", "-77128555369/717631488", true},
         {"-28693057087/1433272320", "576524526420731587/1490147432202240", true}}}},
      {{"E33"},
       0,
       {{{"8"}, {"13/48"}, {"-85457/214272"}, {"126990201721/148259082240"}, {"-998074124043859297/410333696734003200"}}}},
  };
  return table;
}

inline const std::vector<PrintedBranch>& printed_henon_heiles() {
  static const std::vector<PrintedBranch> table{
      {{"E00"}, 0, {{{"2"}, {"1/18"}, {"-11/864"}, {"6089/933120"}, {"-2221951/447897600"}}}},
      {{"E10", "E11"}, 0, {{{"4"}, {"7/18"}, {"-133/864"}, {"30191/233280"}, {"-67779467/447897600"}}}},
      {{"E20"}, 0, {{{"6"}, {"31/18"}, {"-145/288"}, {"200923/186624"}, {"-40752209/29859840"}}}},
      {{"E21", "E22"}, 0, {{{"6"}, {"5/9"}, {"-83/144"}, {"432493/466560"}, {"-133188257/74649600"}}}},
      {{"E30", "E31"}, 0, {{{"8"}, {"26/9"}, {"-535/432"}, {"180037/46656"}, {"-296084959/44789760"}}}},
      {{"E32"}, 0, {{{"8"}, {"5/9"}, {"-1123/432"}, {"1416869/233280"}, {"-3963323843/223948800"}}}},
      {{"E33"}, 0, {{{"8"}, {"5/9"}, {"-115/432"}, {"12121/46656"}, {"-15676999/44789760"}}}},
      {{"E40"}, 0, {{{"10"}, {"91/18"}, {"-2065/864"}, {"1208431/186624"}, {"-1731827209/89579520"}}}},
      {{"E41", "E42"}, 0, {{{"10"}, {"35/9"}, {"-1085/432"}, {"1285823/93312"}, {"-1478364167/44789760"}}}},
      {{"E43", "E44"}, 0, {{{"10"}, {"7/18"}, {"-2485/864"}, {"1063615/186624"}, {"-1819581169/89579520"}}}},
      {{"E50", "E51"}, 0, {{{"12"}, {"127/18"}, {"-1205/288"}, {"814129/46656"}, {"-1958220799/29859840"}}}},
      {{"E52"}, 0, {{{"12"}, {"85/18"}, {"-2633/288"}, {"1370563/29160"}, {"-20818356203/149299200"}}}},
      {{"E53"}, 0, {{{"12"}, {"85/18"}, {"55/288"}, {"70673/5832"}, {"354058961/29859840"}}}},
      {{"E54", "E55"}, 0, {{{"12"}, {"1/18"}, {"-1457/288"}, {"329257/29160"}, {"-9599275547/149299200"}}}},
  };
  return table;
}

}  // namespace acceptance
