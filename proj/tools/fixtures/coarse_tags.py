"""Penn Treebank -> coarse tag mapping shared by the fixture scripts."""

PENN_TO_COARSE = {
    "NN": "NOUN", "NNS": "NOUN",
    "NNP": "PROPN", "NNPS": "PROPN", "NP": "PROPN",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB", "MD": "VERB",
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "RB": "ADV", "RBR": "ADV", "RBS": "ADV", "WRB": "ADV",
    "DT": "DET", "PDT": "DET", "WDT": "DET",
    "IN": "ADP", "TO": "ADP",
    "CD": "NUM",
    ".": "PUNCT", ",": "PUNCT", ":": "PUNCT", "(": "PUNCT", ")": "PUNCT", "``": "PUNCT",
    "''": "PUNCT", '"': "PUNCT", "$": "PUNCT", "#": "PUNCT", "SYM": "PUNCT", "£": "PUNCT",
    "PRP": "OTHER", "PRP$": "OTHER", "WP": "OTHER", "WP$": "OTHER", "EX": "OTHER", "CC": "OTHER",
    "RP": "OTHER", "UH": "OTHER", "POS": "OTHER", "LS": "OTHER", "FW": "OTHER", "ND": "OTHER",
    "PP": "OTHER",
}


def coarse(penn):
    first = penn.split("|")[0]
    return PENN_TO_COARSE.get(first)
