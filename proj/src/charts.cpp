namespace jetcc {}
