"""Static tables backing the text normalizer.

Self-contained substitutes for external normalization packages:

* ``MOJIBAKE_DIGRAPHS``: the most common UTF-8 byte sequences mis-decoded
  as CP1252 (Latin-1 fallback for undefined bytes), mapped back to the
  intended character. Curated for Lithuanian, Russian-adjacent Western
  punctuation, and general Western European text.
* ``EMOJI_RANGES``: codepoint ranges treated as emoji, derived from the
  UCD emoji-data Emoji=Yes property with keycap bases (digits, ``#``,
  ``*``) excluded and the SMP pictograph blocks taken whole.
* ``EMOJI_SHORTCODES``: CLDR-derived short names for common emoji,
  written in the lowercase/underscore shortcode dialect. Sequences not
  listed fall back to ``:emoji:`` (flags fall back to ``:flag_xx:``).
"""

MOJIBAKE_DIGRAPHS = {
    # Lithuanian
    "Ä…": "ą",
    "Ä": "č",
    "Ä™": "ę",
    "Ä—": "ė",
    "Ä¯": "į",
    "Å¡": "š",
    "Å³": "ų",
    "Å«": "ū",
    "Å¾": "ž",
    "Ä„": "Ą",
    "ÄŒ": "Č",
    "Ä˜": "Ę",
    "Ä–": "Ė",
    "Ä®": "Į",
    "Å ": "Š",
    "Å²": "Ų",
    "Åª": "Ū",
    "Å½": "Ž",
    # Western European
    "Ã©": "é",
    "Ã¨": "è",
    "Ãª": "ê",
    "Ã«": "ë",
    "Ã¼": "ü",
    "Ã¶": "ö",
    "Ã¤": "ä",
    "Ã¡": "á",
    "Ã ": "à",
    "Ã­": "í",
    "Ã³": "ó",
    "Ãº": "ú",
    "Ã±": "ñ",
    "Ã§": "ç",
    "ÃŸ": "ß",
    # punctuation and symbols
    "â€˜": "‘",
    "â€™": "’",
    "â€œ": "“",
    "â€": "”",
    "â€ž": "„",
    "â€š": "‚",
    "â€“": "–",
    "â€”": "—",
    "â€¦": "…",
    "Â«": "«",
    "Â»": "»",
    "Â°": "°",
    "â‚¬": "€",
    "â„¢": "™",
    # second-level lead and trail bytes, so double-encoded text unwinds
    # in two passes
    "Ã„": "Ä",
    "Ã…": "Å",
    "Ãƒ": "Ã",
    "Ã‚": "Â",
    "Ã¢": "â",
    "Â¡": "¡",
    "Â¯": "¯",
    "Â³": "³",
    "Â¾": "¾",
    "Â": "",
    "Â": "",
}

EMOJI_RANGES = (
    (0x00A9, 0x00A9),
    (0x00AE, 0x00AE),
    (0x203C, 0x203C),
    (0x2049, 0x2049),
    (0x2122, 0x2122),
    (0x2139, 0x2139),
    (0x2194, 0x2199),
    (0x21A9, 0x21AA),
    (0x231A, 0x231B),
    (0x2328, 0x2328),
    (0x23CF, 0x23CF),
    (0x23E9, 0x23F3),
    (0x23F8, 0x23FA),
    (0x24C2, 0x24C2),
    (0x25AA, 0x25AB),
    (0x25B6, 0x25B6),
    (0x25C0, 0x25C0),
    (0x25FB, 0x25FE),
    (0x2600, 0x2604),
    (0x260E, 0x260E),
    (0x2611, 0x2611),
    (0x2614, 0x2615),
    (0x2618, 0x2618),
    (0x261D, 0x261D),
    (0x2620, 0x2620),
    (0x2622, 0x2623),
    (0x2626, 0x2626),
    (0x262A, 0x262A),
    (0x262E, 0x262F),
    (0x2638, 0x263A),
    (0x2640, 0x2640),
    (0x2642, 0x2642),
    (0x2648, 0x2653),
    (0x265F, 0x2660),
    (0x2663, 0x2663),
    (0x2665, 0x2666),
    (0x2668, 0x2668),
    (0x267B, 0x267B),
    (0x267E, 0x267F),
    (0x2692, 0x2697),
    (0x2699, 0x2699),
    (0x269B, 0x269C),
    (0x26A0, 0x26A1),
    (0x26A7, 0x26A7),
    (0x26AA, 0x26AB),
    (0x26B0, 0x26B1),
    (0x26BD, 0x26BE),
    (0x26C4, 0x26C5),
    (0x26C8, 0x26C8),
    (0x26CE, 0x26CF),
    (0x26D1, 0x26D1),
    (0x26D3, 0x26D4),
    (0x26E9, 0x26EA),
    (0x26F0, 0x26F5),
    (0x26F7, 0x26FA),
    (0x26FD, 0x26FD),
    (0x2702, 0x2702),
    (0x2705, 0x2705),
    (0x2708, 0x270D),
    (0x270F, 0x270F),
    (0x2712, 0x2712),
    (0x2714, 0x2714),
    (0x2716, 0x2716),
    (0x271D, 0x271D),
    (0x2721, 0x2721),
    (0x2728, 0x2728),
    (0x2733, 0x2734),
    (0x2744, 0x2744),
    (0x2747, 0x2747),
    (0x274C, 0x274C),
    (0x274E, 0x274E),
    (0x2753, 0x2755),
    (0x2757, 0x2757),
    (0x2763, 0x2764),
    (0x2795, 0x2797),
    (0x27A1, 0x27A1),
    (0x27B0, 0x27B0),
    (0x27BF, 0x27BF),
    (0x2934, 0x2935),
    (0x2B05, 0x2B07),
    (0x2B1B, 0x2B1C),
    (0x2B50, 0x2B50),
    (0x2B55, 0x2B55),
    (0x3030, 0x3030),
    (0x303D, 0x303D),
    (0x3297, 0x3297),
    (0x3299, 0x3299),
    (0x1F004, 0x1F004),
    (0x1F0CF, 0x1F0CF),
    (0x1F170, 0x1F171),
    (0x1F17E, 0x1F17F),
    (0x1F18E, 0x1F18E),
    (0x1F191, 0x1F19A),
    (0x1F1E6, 0x1F1FF),
    (0x1F201, 0x1F202),
    (0x1F21A, 0x1F21A),
    (0x1F22F, 0x1F22F),
    (0x1F232, 0x1F23A),
    (0x1F250, 0x1F251),
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F7E0, 0x1F7FF),
    (0x1F900, 0x1F9FF),
    (0x1FA00, 0x1FAFF),
)

# variation selectors and skin-tone modifiers consumed inside a sequence
EMOJI_MODIFIER_RANGES = ((0x1F3FB, 0x1F3FF), (0xFE0E, 0xFE0F))

EMOJI_SHORTCODES = {
    "\U0001F600": "grinning_face",
    "\U0001F603": "grinning_face_with_big_eyes",
    "\U0001F604": "grinning_face_with_smiling_eyes",
    "\U0001F601": "beaming_face_with_smiling_eyes",
    "\U0001F606": "grinning_squinting_face",
    "\U0001F605": "grinning_face_with_sweat",
    "\U0001F923": "rolling_on_the_floor_laughing",
    "\U0001F602": "face_with_tears_of_joy",
    "\U0001F642": "slightly_smiling_face",
    "\U0001F643": "upside-down_face",
    "\U0001F609": "winking_face",
    "\U0001F60A": "smiling_face_with_smiling_eyes",
    "\U0001F607": "smiling_face_with_halo",
    "\U0001F970": "smiling_face_with_hearts",
    "\U0001F60D": "smiling_face_with_heart-eyes",
    "\U0001F929": "star-struck",
    "\U0001F618": "face_blowing_a_kiss",
    "\U0001F617": "kissing_face",
    "\U0001F61A": "kissing_face_with_closed_eyes",
    "\U0001F619": "kissing_face_with_smiling_eyes",
    "\U0001F60B": "face_savoring_food",
    "\U0001F61B": "face_with_tongue",
    "\U0001F61C": "winking_face_with_tongue",
    "\U0001F92A": "zany_face",
    "\U0001F61D": "squinting_face_with_tongue",
    "\U0001F911": "money-mouth_face",
    "\U0001F917": "hugging_face",
    "\U0001F92D": "face_with_hand_over_mouth",
    "\U0001F92B": "shushing_face",
    "\U0001F914": "thinking_face",
    "\U0001F910": "zipper-mouth_face",
    "\U0001F928": "face_with_raised_eyebrow",
    "\U0001F610": "neutral_face",
    "\U0001F611": "expressionless_face",
    "\U0001F636": "face_without_mouth",
    "\U0001F60F": "smirking_face",
    "\U0001F612": "unamused_face",
    "\U0001F644": "face_with_rolling_eyes",
    "\U0001F62C": "grimacing_face",
    "\U0001F925": "lying_face",
    "\U0001F60C": "relieved_face",
    "\U0001F614": "pensive_face",
    "\U0001F62A": "sleepy_face",
    "\U0001F924": "drooling_face",
    "\U0001F634": "sleeping_face",
    "\U0001F637": "face_with_medical_mask",
    "\U0001F912": "face_with_thermometer",
    "\U0001F915": "face_with_head-bandage",
    "\U0001F922": "nauseated_face",
    "\U0001F92E": "face_vomiting",
    "\U0001F927": "sneezing_face",
    "\U0001F975": "hot_face",
    "\U0001F976": "cold_face",
    "\U0001F974": "woozy_face",
    "\U0001F635": "dizzy_face",
    "\U0001F92F": "exploding_head",
    "\U0001F920": "cowboy_hat_face",
    "\U0001F973": "partying_face",
    "\U0001F60E": "smiling_face_with_sunglasses",
    "\U0001F913": "nerd_face",
    "\U0001F9D0": "face_with_monocle",
    "\U0001F615": "confused_face",
    "\U0001F61F": "worried_face",
    "\U0001F641": "slightly_frowning_face",
    "☹": "frowning_face",
    "\U0001F62E": "face_with_open_mouth",
    "\U0001F62F": "hushed_face",
    "\U0001F632": "astonished_face",
    "\U0001F633": "flushed_face",
    "\U0001F97A": "pleading_face",
    "\U0001F626": "frowning_face_with_open_mouth",
    "\U0001F627": "anguished_face",
    "\U0001F628": "fearful_face",
    "\U0001F630": "anxious_face_with_sweat",
    "\U0001F625": "sad_but_relieved_face",
    "\U0001F622": "crying_face",
    "\U0001F62D": "loudly_crying_face",
    "\U0001F631": "face_screaming_in_fear",
    "\U0001F616": "confounded_face",
    "\U0001F623": "persevering_face",
    "\U0001F61E": "disappointed_face",
    "\U0001F613": "downcast_face_with_sweat",
    "\U0001F629": "weary_face",
    "\U0001F62B": "tired_face",
    "\U0001F971": "yawning_face",
    "\U0001F624": "face_with_steam_from_nose",
    "\U0001F621": "pouting_face",
    "\U0001F620": "angry_face",
    "\U0001F92C": "face_with_symbols_on_mouth",
    "\U0001F608": "smiling_face_with_horns",
    "\U0001F47F": "angry_face_with_horns",
    "\U0001F480": "skull",
    "☠": "skull_and_crossbones",
    "\U0001F4A9": "pile_of_poo",
    "\U0001F921": "clown_face",
    "\U0001F479": "ogre",
    "\U0001F47A": "goblin",
    "\U0001F47B": "ghost",
    "\U0001F47D": "alien",
    "\U0001F916": "robot",
    "\U0001F63A": "grinning_cat",
    "\U0001F639": "cat_with_tears_of_joy",
    "\U0001F63B": "smiling_cat_with_heart-eyes",
    "\U0001F640": "weary_cat",
    "\U0001F63F": "crying_cat",
    "\U0001F63E": "pouting_cat",
    "\U0001F648": "see-no-evil_monkey",
    "\U0001F649": "hear-no-evil_monkey",
    "\U0001F64A": "speak-no-evil_monkey",
    "\U0001F48B": "kiss_mark",
    "\U0001F498": "heart_with_arrow",
    "\U0001F49D": "heart_with_ribbon",
    "\U0001F496": "sparkling_heart",
    "\U0001F497": "growing_heart",
    "\U0001F493": "beating_heart",
    "\U0001F49E": "revolving_hearts",
    "\U0001F495": "two_hearts",
    "❣": "heart_exclamation",
    "\U0001F494": "broken_heart",
    "❤": "red_heart",
    "\U0001F9E1": "orange_heart",
    "\U0001F49B": "yellow_heart",
    "\U0001F49A": "green_heart",
    "\U0001F499": "blue_heart",
    "\U0001F49C": "purple_heart",
    "\U0001F5A4": "black_heart",
    "\U0001F90D": "white_heart",
    "\U0001F90E": "brown_heart",
    "\U0001F4AF": "hundred_points",
    "\U0001F4A2": "anger_symbol",
    "\U0001F4A5": "collision",
    "\U0001F4AB": "dizzy",
    "\U0001F4A6": "sweat_droplets",
    "\U0001F4A8": "dashing_away",
    "\U0001F4AC": "speech_balloon",
    "\U0001F4AD": "thought_balloon",
    "\U0001F4A4": "zzz",
    "\U0001F44B": "waving_hand",
    "✋": "raised_hand",
    "\U0001F596": "vulcan_salute",
    "\U0001F44C": "OK_hand",
    "✌": "victory_hand",
    "\U0001F91E": "crossed_fingers",
    "\U0001F918": "sign_of_the_horns",
    "\U0001F919": "call_me_hand",
    "\U0001F448": "backhand_index_pointing_left",
    "\U0001F449": "backhand_index_pointing_right",
    "\U0001F446": "backhand_index_pointing_up",
    "\U0001F447": "backhand_index_pointing_down",
    "\U0001F595": "middle_finger",
    "☝": "index_pointing_up",
    "\U0001F44D": "thumbs_up",
    "\U0001F44E": "thumbs_down",
    "✊": "raised_fist",
    "\U0001F44A": "oncoming_fist",
    "\U0001F44F": "clapping_hands",
    "\U0001F64C": "raising_hands",
    "\U0001F450": "open_hands",
    "\U0001F91D": "handshake",
    "\U0001F64F": "folded_hands",
    "\U0001F4AA": "flexed_biceps",
    "\U0001F440": "eyes",
    "\U0001F9E0": "brain",
    "\U0001F525": "fire",
    "✨": "sparkles",
    "\U0001F31F": "glowing_star",
    "⭐": "star",
    "\U0001F308": "rainbow",
    "☀": "sun",
    "⚡": "high_voltage",
    "❄": "snowflake",
    "☔": "umbrella_with_rain_drops",
    "\U0001F389": "party_popper",
    "\U0001F38A": "confetti_ball",
    "\U0001F388": "balloon",
    "\U0001F382": "birthday_cake",
    "\U0001F37A": "beer_mug",
    "\U0001F37B": "clinking_beer_mugs",
    "\U0001F377": "wine_glass",
    "☕": "hot_beverage",
    "\U0001F355": "pizza",
    "\U0001F4B0": "money_bag",
    "\U0001F4A3": "bomb",
    "\U0001F52B": "pistol",
    "\U0001F52A": "kitchen_knife",
    "\U0001F489": "syringe",
    "\U0001F48A": "pill",
    "\U0001F680": "rocket",
    "✅": "check_mark_button",
    "✔": "check_mark",
    "❌": "cross_mark",
    "❎": "cross_mark_button",
    "⚠": "warning",
    "\U0001F6AB": "prohibited",
    "❗": "exclamation_mark",
    "❓": "question_mark",
    "‼": "double_exclamation_mark",
    "⁉": "exclamation_question_mark",
    "\U0001F436": "dog_face",
    "\U0001F431": "cat_face",
    "\U0001F43B": "bear",
    "\U0001F43C": "panda",
    "\U0001F981": "lion",
    "\U0001F437": "pig_face",
    "\U0001F438": "frog",
    "\U0001F435": "monkey_face",
    "\U0001F414": "chicken",
    "\U0001F427": "penguin",
    "\U0001F426": "bird",
    "\U0001F984": "unicorn",
    "\U0001F41D": "honeybee",
    "\U0001F40D": "snake",
    "\U0001F422": "turtle",
    "\U0001F419": "octopus",
    "\U0001F339": "rose",
    "\U0001F33B": "sunflower",
    "\U0001F338": "cherry_blossom",
    "\U0001F30D": "globe_showing_Europe-Africa",
    "\U0001F30E": "globe_showing_Americas",
    "\U0001F3E0": "house",
    "\U0001F697": "automobile",
    "✈": "airplane",
    "⌚": "watch",
    "\U0001F4F1": "mobile_phone",
    "\U0001F4BB": "laptop",
    "\U0001F4F7": "camera",
    "\U0001F512": "locked",
    "\U0001F511": "key",
    "\U0001F4CC": "pushpin",
    "\U0001F4CE": "paperclip",
    "✂": "scissors",
    "✏": "pencil",
    "\U0001F4D6": "open_book",
    "\U0001F4DA": "books",
    "\U0001F4F0": "newspaper",
    "\U0001F3B5": "musical_note",
    "\U0001F3B6": "musical_notes",
    "\U0001F3A4": "microphone",
    "\U0001F3A7": "headphone",
    "⚽": "soccer_ball",
    "\U0001F3C0": "basketball",
    "\U0001F3C6": "trophy",
    "\U0001F947": "1st_place_medal",
    "\U0001F3AF": "direct_hit",
    "♻": "recycling_symbol",
    "\U0001F197": "OK_button",
    "\U0001F195": "NEW_button",
    "\U0001F534": "red_circle",
    "\U0001F7E2": "green_circle",
    "\U0001F535": "blue_circle",
    "⚫": "black_circle",
    "⚪": "white_circle",
    "➡": "right_arrow",
    "⬅": "left_arrow",
    "⬆": "up_arrow",
    "⬇": "down_arrow",
    "™": "trade_mark",
    "©": "copyright",
    "®": "registered",
}

# curated flag names; other regional-indicator pairs fall back to flag_xx
FLAG_SHORTCODES = {
    "LT": "Lithuania",
    "LV": "Latvia",
    "EE": "Estonia",
    "RU": "Russia",
    "BY": "Belarus",
    "UA": "Ukraine",
    "PL": "Poland",
    "DE": "Germany",
    "FR": "France",
    "US": "United_States",
    "GB": "United_Kingdom",
    "EU": "European_Union",
}

KEYCAP_SHORTCODES = {
    "0": "keycap_0",
    "1": "keycap_1",
    "2": "keycap_2",
    "3": "keycap_3",
    "4": "keycap_4",
    "5": "keycap_5",
    "6": "keycap_6",
    "7": "keycap_7",
    "8": "keycap_8",
    "9": "keycap_9",
    "#": "keycap_hash",
    "*": "keycap_asterisk",
}
