#!/usr/bin/env python3
"""Builds data/demo_lexicon.json from the word lists below.

Parent categories receive the union of their children's patterns so the
shipped lexicon is hierarchy-consistent (child % <= parent % on any text).
The word lists are small hand-written public lists, not LIWC content.
"""
import json
import pathlib

TOP = [
    ("WC", "WC", {"metric": "word_count"}),
    ("function", "Function words", {}),
    ("affect", "Affect Words", {}),
    ("social", "Social Words", {}),
    ("cogproc", "Cognitive Processes", {}),
    ("percept", "Perpetual Processes", {}),
    ("bio", "Biological Processes", {}),
    ("drives", "Core Drives and Needs", {}),
    ("relativ", "Relativity", {}),
    ("informal", "Informal Speech", {}),
    ("allpunc", "All Punctuation", {"metric": "all_punct"}),
    ("persconc", "Personal Concerns", {}),
    ("timeorient", "Time Orientation", {}),
    ("grammar", "Grammar Other", {}),
    ("langmetrics", "Language Metrics", {"metric": "words_per_sentence"}),
    ("summary", "Summary Variable", {"metric": "dictionary_words"}),
]

CHILDREN = {
    "function": {
        "pronoun": ("Total pronouns", []),
        "ppron": ("Personal pronouns", []),
        "i": ("1st pers singular", "i me my mine myself i'm i've i'll i'd".split()),
        "we": ("1st pers plural", "we us our ours ourselves we're we've we'll let's".split()),
        "you": ("2nd person", "you your yours yourself yourselves you're you've you'll u ur".split()),
        "shehe": ("3rd pers singular", "he she him her his hers himself herself he's she's".split()),
        "they": ("3rd pers plural", "they them their theirs themselves they're they've".split()),
        "ipron": ("Impersonal pronouns", "it its itself it's this that these those something anything everything nothing someone anyone everyone nobody".split()),
        "article": ("Articles", "a an the".split()),
        "prep": ("Prepositions", "to with above about across after against along among around at before behind below beneath beside between by down during for from in inside into near of off on onto out outside over through toward towards under until up upon within without".split()),
        "auxverb": ("Auxiliary verbs", "am is are was were be been being have has had do does did will would shall should can could may might must".split()),
        "adverb": ("Common adverbs", "very really just so too also only even still quite rather almost already always never often soon here there now then".split()),
        "conj": ("Conjunctions", "and but or nor because although though while whereas unless since if".split()),
        "negate": ("Negations", "not no never nor none nobody nothing neither don't doesn't didn't isn't aren't wasn't weren't can't cannot won't wouldn't shouldn't couldn't hasn't haven't hadn't".split()),
    },
    "affect": {
        "posemo": ("Positive emotion", "love* nice sweet good great happ* hope* glad joy* safe* thank* brave* relie* wonderful best calm* proud* support* peace*".split()),
        "negemo": ("Negative emotion", []),
        "anx": ("Anxiety", "afraid fear* scare* terrif* panic* worr* nervous* anxi* threat* frighten*".split()),
        "anger": ("Anger", "anger* angry hate* kill* attack* furious rage* outrag* hostil* violen* shoot* brutal*".split()),
        "sad": ("Sadness", "sad* grief griev* mourn* cry* cried tear* loss lost tragic* heartbrok* devastat* victim*".split()),
    },
    "social": {
        "family": ("Family", "family famil* mother mom dad father son daughter brother sister wife husband parent* child*".split()),
        "friend": ("Friends", "friend* buddy buddies pal mate* neighbo*".split()),
        "female": ("Female references", "she her hers herself woman women girl* lady ladies mother mom sister daughter wife".split()),
        "male": ("Male references", "he him his himself man men boy* guy* father dad brother son husband".split()),
    },
    "cogproc": {
        "insight": ("Insight", "think* know* believ* consider* understand* realiz* feel* idea*".split()),
        "cause": ("Causation", "because cause* effect* hence therefore reason* why result*".split()),
        "discrep": ("Discrepancy", "should would could want* need* hope* wish* ought".split()),
        "tentat": ("Tentative", "maybe perhaps possibl* probabl* seem* guess* unclear unconfirm* rumo* alleged* report* apparent*".split()),
        "certain": ("Certainty", "always never definite* certain* sure* confirm* clearly absolute* fact*".split()),
        "differ": ("Differentiation", "but however else except unlike differ* instead otherwise".split()),
    },
    "percept": {
        "see": ("See", "see* saw look* watch* view* seen sight* photo* pic* video*".split()),
        "hear": ("Hear", "hear* heard listen* sound* loud* quiet* said say* tell* told".split()),
        "feel": ("Feel", "feel* felt touch* hold* hot cold warm*".split()),
    },
    "bio": {
        "body": ("Body", "body bodies head* hand* face* heart* blood* eye* arm* leg*".split()),
        "health": ("Health", "health* hospital* doctor* ill* sick* injur* wound* medic* ebola* virus* dead death*".split()),
        "sexual": ("Sexual", "sex* love* kiss*".split()),
        "ingest": ("Ingestion", "eat* ate food* drink* dinner* lunch* hungry coffee* restaurant*".split()),
    },
    "drives": {
        "affiliation": ("Affiliation", "ally allies friend* together team* community* unit* join* solidar*".split()),
        "achieve": ("Achievement", "win* won success* achiev* best effort* accomplish* hero*".split()),
        "power": ("Power", "power* president* police* officer* army* govern* leader* control* authorit* boss*".split()),
        "reward": ("Reward", "prize* benefit* reward* gain* bonus* get* got".split()),
        "risk": ("Risk", "danger* risk* doubt* threat* bomb* hostage* crisis* emergenc*".split()),
    },
    "relativ": {
        "motion": ("Motion", "arriv* car* go goes going went gone move* run* ran walk* driv* flee* fled".split()),
        "space": ("Space", "down in thin up out inside outside near far here there area* street* place* cafe*".split()),
        "time": ("Time", "end* until season* now then today tonight yesterday tomorrow hour* minute* day* week* year* soon late*".split()),
    },
    "informal": {
        "swear": ("Swear words", "damn* hell crap* wtf".split()),
        "netspeak": ("Netspeak", "lol omg btw rt thx idk smh u ur".split()),
        "assent": ("Assent", "yes yeah ok okay agree* absolutely".split()),
        "nonflu": ("Nonfluencies", "er hm* umm* uh".split()),
        "filler": ("Fillers", "blah like youknow imean".split()),
    },
    "persconc": {
        "work": ("Work", "work* job* office* staff* employ* boss* career* journalist* editor*".split()),
        "leisure": ("Leisure", "game* play* party* concert* music* show* movie* sport* fun".split()),
        "home": ("Home", "home* house* kitchen* family room*".split()),
        "money": ("Money", "money* cash* pay* paid price* cost* bank* dollar* euro* art* sell* sold".split()),
        "relig": ("Religion", "god* pray* church* mosque* relig* faith* islam* muslim* christian* holy".split()),
        "death": ("Death", "dead death* die* died kill* murder* funeral* bury* buried grave*".split()),
    },
    "timeorient": {
        "focuspast": ("Past focus", "was were had did went said ago yesterday happened been saw told".split()),
        "focuspresent": ("Present focus", "is are am now today be being does have has going".split()),
        "focusfuture": ("Future focus", "will shall gonna tomorrow soon may might going future*".split()),
    },
    "grammar": {
        "verb": ("Common verbs", "go* went get* got make* made say* said take* took see* saw come* came know* think* want* need* leave* left".split()),
        "adj": ("Common adjectives", "big small new old good bad great large little happy sad free safe".split()),
        "compare": ("Comparisons", "more less most least better worse bigger smaller than".split()),
        "interrog": ("Interrogatives", "what when where who whom whose which why how".split()),
        "number": ("Numbers", "one two three four five six seven eight nine ten first second hundred thousand million".split()),
        "quant": ("Quantifiers", "all any few many much several some every each lot* most".split()),
    },
    "langmetrics": {
        "sixltr": ("Words > 6 letters", {"metric": "six_letter_words"}),
    },
}

# Grouping inside the function and affect blocks.
SUBPARENT = {
    "i": "ppron", "we": "ppron", "you": "ppron", "shehe": "ppron", "they": "ppron",
    "ppron": "pronoun", "ipron": "pronoun",
    "anx": "negemo", "anger": "negemo", "sad": "negemo",
}


def main():
    cats = {}
    for key, label, extra in TOP:
        cats[key] = {"label": label, **extra}
        if "metric" not in extra:
            cats[key]["patterns"] = []
    for top, children in CHILDREN.items():
        for key, (label, payload) in children.items():
            parent = SUBPARENT.get(key, top)
            entry = {"label": label, "parent": parent}
            if isinstance(payload, dict):
                entry.update(payload)
            else:
                entry["patterns"] = list(payload)
            cats[key] = entry

    # propagate patterns upward, deepest first
    def depth(k):
        d = 0
        while "parent" in cats[k]:
            k = cats[k]["parent"]
            d += 1
        return d

    for key in sorted(cats, key=depth, reverse=True):
        entry = cats[key]
        if "patterns" not in entry or "parent" not in entry:
            continue
        parent = cats[entry["parent"]]
        if "patterns" in parent:
            for p in entry["patterns"]:
                if p not in parent["patterns"]:
                    parent["patterns"].append(p)

    for entry in cats.values():
        if "patterns" in entry:
            entry["patterns"] = sorted(set(entry["patterns"]))
            assert entry["patterns"], entry

    doc = {"name": "rumourlens-demo", "version": "1.0", "categories": cats}
    out = pathlib.Path(__file__).resolve().parent.parent / "demo_lexicon.json"
    out.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
